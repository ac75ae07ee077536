//! Plays the perfect matching game on `G(n, ln^3 n / n)` against a random or
//! degree-attacking Breaker and prints the outcome and move breakdown.
//!
//! cargo run --example perfect_matching -- [n] [seed] [random|degree] [bipartite]

use std::sync::Arc;
use std::time::Instant;

use fastmaker::breakers::{DegreeAttacker, RandomBreaker};
use fastmaker::engine::{play, BreakerStrategy, GameConfig, GraphGoal, GraphObjective};
use fastmaker::graph::{gen_bipartite, gen_gnp, GnpParams};
use fastmaker::makers::{pm_bipartite_strategy, pm_strategy, StrategyConstants};

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(1000);
    let seed: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let attacker = args.get(2).is_some_and(|s| s == "degree");
    let bipartite = args.get(3).is_some_and(|s| s == "bipartite");

    let p = GnpParams::log_power_p(n, 3.0);
    let consts: StrategyConstants = match std::env::var("FASTMAKER_CONSTS") {
        Ok(json) => serde_json::from_str(&json)?,
        Err(_) => StrategyConstants::default(),
    };
    let start = Instant::now();
    let (host, mut maker) = if bipartite {
        let bg = gen_bipartite(n, p, seed)?;
        let maker = pm_bipartite_strategy(&bg, 1, &consts)?;
        (Arc::new(bg.into_graph()), maker)
    } else {
        let g = Arc::new(gen_gnp(GnpParams::new(n, p, seed)?)?);
        let maker = pm_strategy(Arc::clone(&g), 1, &consts)?;
        (g, maker)
    };
    println!("board: n={n} p={p:.4} edges={}", host.edge_count());
    let mut breaker: Box<dyn BreakerStrategy> =
        if attacker { Box::new(DegreeAttacker::new(Arc::clone(&host))) } else { Box::new(RandomBreaker) };
    let mut objective = GraphObjective::new(Arc::clone(&host), GraphGoal::PerfectMatching);
    let (t, _) = play(host.edge_count(), &GameConfig::new(1, 1), &mut maker, &mut breaker, &mut objective, seed)?;

    println!("outcome: {:?}", t.outcome());
    println!("maker moves: {} (n/2 = {})", t.last.maker_moves, n / 2);
    for (stage, count) in maker.stage_moves() {
        println!("  {stage:>10}: {count}");
    }
    if let Some(plan) = maker.plan() {
        let (h, e1, rho) = plan.sparse_sizes();
        println!("residual: |V_H|={} |E_H|={h} |E_1|={e1} rho={rho:.3} stats={:?}", plan.vh().len(), plan.stats());
    }
    println!("wall time: {:.2?}", start.elapsed());
    Ok(())
}
