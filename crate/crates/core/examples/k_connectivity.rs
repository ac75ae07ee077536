//! Plays the k-connectivity game on `G(n, ln^3 n / n)` by multiplexing
//! Hamiltonicity, bipartite matching and star sub-games.
//!
//! cargo run --example k_connectivity -- [n] [k] [seed] [random|degree]

use std::sync::Arc;
use std::time::Instant;

use fastmaker::breakers::{DegreeAttacker, RandomBreaker};
use fastmaker::engine::{play, BreakerStrategy, GameConfig, GraphGoal, GraphObjective};
use fastmaker::graph::{gen_gnp, GnpParams};
use fastmaker::makers::{kconn_strategy, StrategyConstants};

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(600);
    let k: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    let attacker = args.get(3).is_some_and(|s| s == "degree");

    let consts: StrategyConstants = match std::env::var("FASTMAKER_CONSTS") {
        Ok(json) => serde_json::from_str(&json)?,
        Err(_) => StrategyConstants::default(),
    };
    let start = Instant::now();
    let p = GnpParams::log_power_p(n, 3.0);
    let host = Arc::new(gen_gnp(GnpParams::new(n, p, seed)?)?);
    let mut maker = kconn_strategy(Arc::clone(&host), 1, k, &consts, seed)?;
    println!("board: n={n} k={k} p={p:.4} edges={}", host.edge_count());
    let mut breaker: Box<dyn BreakerStrategy> =
        if attacker { Box::new(DegreeAttacker::new(Arc::clone(&host))) } else { Box::new(RandomBreaker) };
    let mut objective = GraphObjective::new(Arc::clone(&host), GraphGoal::Connectivity(k));
    let (t, _) = play(host.edge_count(), &GameConfig::new(1, 1), &mut maker, &mut breaker, &mut objective, seed)?;

    println!("outcome: {:?}", t.outcome());
    println!("maker moves: {} (kn/2 = {})", t.last.maker_moves, k * n / 2);
    for sb in maker.boards().boards() {
        println!(
            "  {:>10}: {} claims, largest Breaker gap {}, done {}",
            sb.name,
            sb.visits(),
            sb.max_breaker_gap(),
            sb.is_done()
        );
    }
    let mut notes: std::collections::BTreeMap<(Option<u32>, &str), usize> = Default::default();
    for m in t.moves.iter().filter(|m| m.side == fastmaker::engine::Side::Maker) {
        *notes.entry((m.board, m.note.as_str())).or_default() += 1;
    }
    for ((board, note), count) in notes {
        println!("  board {board:?} {note:>16}: {count}");
    }
    println!("wall time: {:.2?}", start.elapsed());
    Ok(())
}
