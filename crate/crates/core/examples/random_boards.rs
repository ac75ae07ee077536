//! Seeded boards: `G(n,p)`, the balanced bipartite board, and the graph file
//! format round trip.
//!
//! cargo run --example random_boards -- [n] [exponent] [seed]

use fastmaker::graph::{gen_bipartite, gen_gnp, read_graph, write_graph, GnpParams};

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(2000);
    let exponent: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3.0);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(7);

    let p = GnpParams::log_power_p(n, exponent);
    let g = gen_gnp(GnpParams::new(n, p, seed)?)?;
    let again = gen_gnp(GnpParams::new(n, p, seed)?)?;
    println!("G({n}, ln^{exponent} n / n): p={p:.5}, {} edges (expected {:.0})", g.edge_count(), p * (n * (n - 1) / 2) as f64);
    println!("  degrees: min {} max {}, same seed gives the same edges: {}", g.min_degree(), g.max_degree(), g.edges() == again.edges());

    let bg = gen_bipartite(n, p, seed)?;
    println!("bipartite board: {} + {} vertices, {} edges", bg.half(), bg.half(), bg.graph().edge_count());

    let mut buf = Vec::new();
    write_graph(&g, &mut buf)?;
    let back = read_graph(buf.as_slice())?;
    let header = String::from_utf8_lossy(&buf[..buf.iter().position(|&c| c == b'\n').unwrap_or(0)]).into_owned();
    println!("file header {header}, {} bytes, round trip exact: {}", buf.len(), back.edges() == g.edges());
    Ok(())
}
