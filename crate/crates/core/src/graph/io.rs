//! Plain-text graph files: one JSON header line followed by one `u v` pair
//! per line, 0-indexed. Undirected files store `u < v`; digraph files store
//! arcs as ordered pairs.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{Digraph, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphHeader {
    pub n: usize,
    pub m: usize,
    #[serde(default)]
    pub directed: bool,
}

pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    let header = GraphHeader { n: g.n(), m: g.edge_count(), directed: false };
    writeln!(out, "{}", serde_json::to_string(&header)?)?;
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_digraph<W: Write>(d: &Digraph, mut out: W) -> Result<()> {
    let header = GraphHeader { n: d.n(), m: d.arc_count(), directed: true };
    writeln!(out, "{}", serde_json::to_string(&header)?)?;
    for (u, v) in d.arcs() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

fn read_pairs<R: BufRead>(input: R) -> Result<(GraphHeader, Vec<(usize, usize)>)> {
    let mut lines = input.lines();
    let first = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))??;
    let header: GraphHeader = serde_json::from_str(first.trim())
        .map_err(|e| Error::Parse(format!("bad header: {e}")))?;
    let mut pairs = Vec::with_capacity(header.m);
    for (i, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => pairs.push((u, v)),
            _ => return Err(Error::Parse(format!("line {}: expected `u v`", i + 2))),
        }
    }
    if pairs.len() != header.m {
        return Err(Error::Parse(format!(
            "header announces {} pairs, found {}",
            header.m,
            pairs.len()
        )));
    }
    Ok((header, pairs))
}

pub fn read_graph<R: BufRead>(input: R) -> Result<Graph> {
    let (header, pairs) = read_pairs(input)?;
    if header.directed {
        return Err(Error::Parse("expected an undirected graph file".into()));
    }
    Graph::from_edges(header.n, pairs)
}

pub fn read_digraph<R: BufRead>(input: R) -> Result<Digraph> {
    let (header, pairs) = read_pairs(input)?;
    if !header.directed {
        return Err(Error::Parse("expected a digraph file".into()));
    }
    Digraph::from_arcs(header.n, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_roundtrip() {
        let g = Graph::complete(5);
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(r#"{"n":5,"m":10,"directed":false}"#));
        assert_eq!(read_graph(&buf[..]).unwrap(), g);
    }

    #[test]
    fn digraph_roundtrip() {
        let d = Digraph::cycle(4);
        let mut buf = Vec::new();
        write_digraph(&d, &mut buf).unwrap();
        assert_eq!(read_digraph(&buf[..]).unwrap(), d);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(read_graph(&b""[..]).is_err());
        assert!(read_graph(&b"{\"n\":3,\"m\":2}\n0 1\n"[..]).is_err());
        assert!(read_graph(&b"{\"n\":3,\"m\":1}\n0 x\n"[..]).is_err());
        assert!(read_graph(&b"{\"n\":3,\"m\":1}\n0 5\n"[..]).is_err());
    }
}
