//! Plays the Hamiltonicity game on `G(n, ln^3 n / n)` and prints the stage
//! breakdown.
//!
//! cargo run --example hamilton_cycle -- [n] [seed] [random|degree]

use std::sync::Arc;
use std::time::Instant;

use fastmaker::breakers::{DegreeAttacker, RandomBreaker};
use fastmaker::engine::{play, BreakerStrategy, GameConfig, GraphGoal, GraphObjective};
use fastmaker::graph::{gen_gnp, GnpParams};
use fastmaker::makers::{ham_strategy, StrategyConstants};

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let seed: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let attacker = args.get(2).is_some_and(|s| s == "degree");

    let consts: StrategyConstants = match std::env::var("FASTMAKER_CONSTS") {
        Ok(json) => serde_json::from_str(&json)?,
        Err(_) => StrategyConstants::default(),
    };
    let start = Instant::now();
    let p = GnpParams::log_power_p(n, 3.0);
    let host = Arc::new(gen_gnp(GnpParams::new(n, p, seed)?)?);
    let mut maker = ham_strategy(Arc::clone(&host), 1, &consts)?;
    let th = maker.thresholds().clone();
    println!("board: n={n} p={p:.4} edges={}", host.edge_count());
    println!("thresholds: {th:?}");
    let mut breaker: Box<dyn BreakerStrategy> =
        if attacker { Box::new(DegreeAttacker::new(Arc::clone(&host))) } else { Box::new(RandomBreaker) };
    let mut objective = GraphObjective::new(Arc::clone(&host), GraphGoal::HamiltonCycle);
    let (t, _) = play(host.edge_count(), &GameConfig::new(1, 1), &mut maker, &mut breaker, &mut objective, seed)?;

    println!("outcome: {:?}", t.outcome());
    println!("maker moves: {} (n = {n})", t.last.maker_moves);
    for (stage, count) in maker.stage_moves() {
        println!("  {stage:>16}: {count}");
    }
    println!("report: {:?}", maker.report());
    println!("wall time: {:.2?}", start.elapsed());
    Ok(())
}
