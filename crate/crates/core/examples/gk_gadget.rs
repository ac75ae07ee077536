//! The `G_k` family: `k-1` cycles joined pairwise by perfect matchings give
//! a k-regular, k-connected graph, the board on which Maker's k-connectivity
//! strategy is shown to be tight.
//!
//! cargo run --example gk_gadget -- [max_k]

use fastmaker::graph::{build_gk, GkPairing, GkSpec};
use fastmaker::oracles::vertex_connectivity;

fn main() -> fastmaker::Result<()> {
    let max_k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for k in 2..=max_k {
        for n in GkSpec::smallest_n(k, 3) {
            for pairing in [GkPairing::Identity, GkPairing::Random(n as u64)] {
                let g = build_gk(k, n, pairing)?;
                println!(
                    "k={k} n={n:>2} {pairing:?}: degrees {}..{}, {} edges, vertex connectivity {}",
                    g.min_degree(),
                    g.max_degree(),
                    g.edge_count(),
                    vertex_connectivity(&g)
                );
            }
        }
    }
    Ok(())
}
