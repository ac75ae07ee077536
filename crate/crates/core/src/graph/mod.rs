//! Graph representations and constructions.
//!
//! [`Graph`] is an immutable undirected simple graph in compressed sparse row
//! form. Edge ids are dense in `0..m` and follow the lexicographic order of
//! the endpoint pairs `(u, v)` with `u < v`, so within every adjacency list
//! both neighbours and incident edge ids are ascending.

mod audit;
mod dipath;
mod gen;
mod io;

pub use audit::{audit_gnp, AuditCheck, AuditConfig, AuditReport};
pub use dipath::{long_directed_path, random_tournament, sample_pair_property};
pub(crate) use dipath::dfs_longest_stack;
pub use gen::{build_gk, gen_bipartite, gen_gnp, GkPairing, GkSpec, GnpParams};
pub use io::{read_digraph, read_graph, write_digraph, write_graph, GraphHeader};

use crate::error::{invalid, Result};

pub type Vertex = usize;
pub type EdgeId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    offsets: Vec<usize>,
    nbrs: Vec<u32>,
    nbr_edges: Vec<EdgeId>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    /// Builds a graph from an arbitrary edge list. Duplicates are merged;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at {u}")));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push((a as u32, b as u32));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unique(n, list))
    }

    /// `edges` must be sorted, deduplicated, with `u < v < n` in every pair.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        offsets.push(0);
        for d in &deg {
            acc += d;
            offsets.push(acc);
        }
        let mut fill = offsets[..n].to_vec();
        let mut nbrs = vec![0u32; acc];
        let mut nbr_edges = vec![0 as EdgeId; acc];
        for (id, &(u, v)) in edges.iter().enumerate() {
            let (u, v) = (u as usize, v as usize);
            nbrs[fill[u]] = v as u32;
            nbr_edges[fill[u]] = id as EdgeId;
            fill[u] += 1;
            nbrs[fill[v]] = u as u32;
            nbr_edges[fill[v]] = id as EdgeId;
            fill[v] += 1;
        }
        Graph {
            n,
            edges,
            offsets,
            nbrs,
            nbr_edges,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u as u32, v as u32));
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        let (u, v) = self.edges[e as usize];
        (u as usize, v as usize)
    }

    pub fn neighbors(&self, v: Vertex) -> &[u32] {
        &self.nbrs[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Incident edge ids of `v`, ascending, parallel to [`Graph::neighbors`].
    pub fn incident_edges(&self, v: Vertex) -> &[EdgeId] {
        &self.nbr_edges[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        self.neighbors(v)
            .iter()
            .zip(self.incident_edges(v))
            .map(|(&w, &e)| (w as usize, e))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a)
            .binary_search(&(b as u32))
            .ok()
            .map(|i| self.incident_edges(a)[i])
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// The other endpoint of `e` seen from `v`.
    pub fn other(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    /// Subgraph induced on `vertices`; local vertex `i` is `vertices[i]`.
    /// Returns the local graph and the local-to-host edge id map.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<EdgeId>) {
        let mut local = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i as u32;
        }
        let mut pairs: Vec<((u32, u32), EdgeId)> = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for (w, e) in self.incident(v) {
                let j = local[w];
                if j != u32::MAX && (i as u32) < j {
                    pairs.push(((i as u32, j), e));
                }
            }
        }
        pairs.sort_unstable();
        let map = pairs.iter().map(|p| p.1).collect();
        let edges = pairs.into_iter().map(|p| p.0).collect();
        (Graph::from_sorted_unique(vertices.len(), edges), map)
    }

    /// Same vertex set, only the edges for which `keep` holds. Returns the
    /// subgraph and its local-to-host edge id map.
    pub fn edge_subgraph(&self, mut keep: impl FnMut(EdgeId) -> bool) -> (Graph, Vec<EdgeId>) {
        let mut edges = Vec::new();
        let mut map = Vec::new();
        for (id, &pair) in self.edges.iter().enumerate() {
            if keep(id as EdgeId) {
                edges.push(pair);
                map.push(id as EdgeId);
            }
        }
        (Graph::from_sorted_unique(self.n, edges), map)
    }

    /// Number of edges with both endpoints in the vertex set given by `mask`.
    pub fn edges_within(&self, mask: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| mask[u as usize] && mask[v as usize])
            .count()
    }

    /// Number of edges between the disjoint vertex sets `a` and `b`.
    pub fn edges_between(&self, a: &[Vertex], b_mask: &[bool]) -> usize {
        a.iter()
            .map(|&u| self.neighbors(u).iter().filter(|&&w| b_mask[w as usize]).count())
            .sum()
    }

    /// True if the graph is connected (the empty graph and K1 count as connected).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w as usize);
                }
            }
        }
        count == self.n
    }
}

/// Bipartite graph with parts `0..half` and `half..2*half`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    graph: Graph,
    half: usize,
}

impl BipartiteGraph {
    pub fn new(graph: Graph, half: usize) -> Result<Self> {
        if graph.n() != 2 * half {
            return Err(invalid(format!(
                "bipartite graph needs 2*{half} vertices, got {}",
                graph.n()
            )));
        }
        for &(u, v) in graph.edges() {
            if (u as usize) >= half || (v as usize) < half {
                return Err(invalid(format!("edge ({u},{v}) does not cross the parts")));
            }
        }
        Ok(BipartiteGraph { graph, half })
    }

    pub fn complete(half: usize) -> Self {
        let edges = (0..half)
            .flat_map(|u| (half..2 * half).map(move |v| (u as u32, v as u32)))
            .collect();
        BipartiteGraph {
            graph: Graph::from_sorted_unique(2 * half, edges),
            half,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// Size of each part.
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn left(&self) -> std::ops::Range<usize> {
        0..self.half
    }

    pub fn right(&self) -> std::ops::Range<usize> {
        self.half..2 * self.half
    }

    pub fn is_left(&self, v: Vertex) -> bool {
        v < self.half
    }
}

/// Directed graph without self-loops and with at most one arc per ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<u32>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { out: vec![Vec::new(); n] }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::new(n);
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(invalid(format!("arc ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at {u}")));
            }
            d.out[u].push(v as u32);
        }
        for list in &mut d.out {
            list.sort_unstable();
            list.dedup();
        }
        Ok(d)
    }

    /// Inserts `u -> v`; returns false if the arc was already present.
    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "self-loop at {u}");
        match self.out[u].binary_search(&(v as u32)) {
            Ok(_) => false,
            Err(pos) => {
                self.out[u].insert(pos, v as u32);
                true
            }
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[u32] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v as usize)))
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn cycle(n: usize) -> Self {
        Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// Transitive tournament with arcs `i -> j` for all `i < j`.
    pub fn transitive_tournament(n: usize) -> Self {
        Digraph::from_arcs(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            .expect("valid tournament")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_is_sorted_and_ids_ascend() {
        let g = Graph::from_edges(5, [(3, 1), (0, 4), (1, 0), (4, 3), (2, 1)]).unwrap();
        for v in 0..5 {
            assert!(g.neighbors(v).windows(2).all(|w| w[0] < w[1]));
            assert!(g.incident_edges(v).windows(2).all(|w| w[0] < w[1]));
            for (w, e) in g.incident(v) {
                assert_eq!(g.edge_id(v, w), Some(e));
                assert_eq!(g.other(e, v), w);
            }
        }
        assert_eq!(g.edges()[0], (0, 1));
    }

    #[test]
    fn rejects_loops_and_merges_duplicates() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let g = Graph::complete(6);
        let (h, map) = g.induced(&[5, 1, 3]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);
        for (local, &host) in map.iter().enumerate() {
            let (a, b) = h.endpoints(local as EdgeId);
            let verts = [5, 1, 3];
            let (x, y) = g.endpoints(host);
            let mut want = [verts[a], verts[b]];
            want.sort();
            assert_eq!([x, y], want);
        }
    }

    #[test]
    fn bipartite_rejects_inner_edges() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert!(BipartiteGraph::new(g, 2).is_err());
        let k = BipartiteGraph::complete(3);
        assert_eq!(k.graph().edge_count(), 9);
    }

    #[test]
    fn digraph_basics() {
        let mut d = Digraph::new(3);
        assert!(d.add_arc(0, 1));
        assert!(!d.add_arc(0, 1));
        assert!(d.has_arc(0, 1) && !d.has_arc(1, 0));
        assert!(Digraph::from_arcs(2, [(1, 1)]).is_err());
        assert_eq!(Digraph::transitive_tournament(6).arc_count(), 15);
    }
}
