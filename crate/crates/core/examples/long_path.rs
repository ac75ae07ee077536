//! Long directed paths by depth-first search in random tournaments.
//!
//! cargo run --example long_path -- [n] [m] [seed]

use fastmaker::graph::{long_directed_path, random_tournament, sample_pair_property};
use fastmaker::rng::{rng_from, stream};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(200);
    let m: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0);

    let mut rng = rng_from(seed, stream::GRAPH);
    let d = random_tournament(n, &mut rng);
    let bad = sample_pair_property(&d, m, 10_000, &mut rng_from(seed, stream::AUDIT));
    let path = long_directed_path(&d, m);
    let simple = path.windows(2).all(|w| d.has_arc(w[0], w[1]));
    println!("tournament n={n}: {} arcs, m={m}", d.arc_count());
    println!("  disjoint m-set pair without an arc among 10^4 samples: {}", bad.map_or("none".into(), |p| format!("{p:?}")));
    println!("  DFS path: {} vertices, length {} (guarantee {}), arcs valid {simple}", path.len(), path.len().saturating_sub(1), n + 1 - 2 * m);
}
