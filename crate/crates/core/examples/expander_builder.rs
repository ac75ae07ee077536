//! Builds an `(R, c)`-expander on `K_n` against a Breaker and checks the
//! result exactly, then with the sampled checker.
//!
//! cargo run --example expander_builder -- [n] [seeds] [r] [c]

use std::sync::Arc;

use fastmaker::breakers::BreakerKind;
use fastmaker::engine::{maker_graph, play, GameConfig, NoObjective, Outcome};
use fastmaker::experiment::make_breaker;
use fastmaker::graph::Graph;
use fastmaker::makers::{BuildGoal, ExpanderStrategy, StrategyConstants};
use fastmaker::oracles::{expander_check, ExpanderParams};

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(12);
    let seeds: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let r: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let c: f64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1.0);

    let host = Arc::new(Graph::complete(n));
    let consts = StrategyConstants::default();
    let exact = ExpanderParams::new(r, c).exact();
    for kind in [BreakerKind::Random, BreakerKind::DegreeAttacker] {
        let (mut pass, mut agree, mut moves) = (0, 0, 0);
        for seed in 0..seeds {
            let vh = (0..n).collect();
            let mut maker = ExpanderStrategy::new(Arc::clone(&host), vh, BuildGoal::Expander { r, c }, 1, &consts)?;
            let mut breaker = make_breaker(kind, &host);
            let (t, board) = play(host.edge_count(), &GameConfig::new(1, 1), &mut maker, &mut breaker, &mut NoObjective, seed)?;
            let g = maker_graph(&host, &board);
            let verdict = expander_check(&g, &exact)?;
            let sampled = expander_check(&g, &ExpanderParams::new(r, c).sampled(2000, seed))?;
            if t.outcome() == &Outcome::MakerWin && verdict.pass {
                pass += 1;
                moves += t.last.maker_moves;
            } else {
                println!("  seed {seed}: {:?} {}", t.outcome(), verdict.detail);
            }
            agree += usize::from(sampled.pass == verdict.pass);
        }
        println!(
            "{}: expander on K_{n} (R={r}, c={c}) in {pass}/{seeds} games, mean {:.1} Maker moves; sampled check agrees {agree}/{seeds}",
            kind.label(),
            moves as f64 / pass.max(1) as f64
        );
    }
    Ok(())
}
