//! The degree game: Maker answers Breaker's edges at each vertex of `V1` so
//! that `d_B(v, V2) <= 4 b ln n (d_M(v, V2) + 1)` holds at the end.
//!
//! cargo run --example degree_game -- [n] [p] [seed]

use std::sync::Arc;

use fastmaker::box_degree::{DegreeGameMaker, DegreeGameView};
use fastmaker::breakers::BreakerKind;
use fastmaker::engine::{play, GameConfig, NoObjective};
use fastmaker::experiment::make_breaker;
use fastmaker::graph::{gen_gnp, GnpParams};

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(400);
    let p: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.1);
    let seed: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5);

    let host = Arc::new(gen_gnp(GnpParams::new(n, p, seed)?)?);
    let v1: Vec<usize> = (0..n / 4).collect();
    let v2: Vec<usize> = (0..n).collect();
    for b in [1, 2] {
        for kind in [BreakerKind::Random, BreakerKind::DegreeAttacker] {
            let mut maker = DegreeGameMaker::new(DegreeGameView::new(Arc::clone(&host), &v1, &v2));
            let mut breaker = make_breaker(kind, &host);
            let (t, _) = play(host.edge_count(), &GameConfig::new(1, b), &mut maker, &mut breaker, &mut NoObjective, seed)?;
            let view = maker.view();
            let worst = v1
                .iter()
                .map(|&v| view.breaker_degree(v) as f64 / (view.maker_degree(v) as f64 + 1.0))
                .fold(0.0, f64::max);
            println!(
                "b={b} {:>15}: {} Maker moves, worst d_B/(d_M+1) = {worst:.2} vs 4 b ln n = {:.2}, violation {:?}, ledger ok {}",
                kind.label(),
                t.last.maker_moves,
                4.0 * b as f64 * (n as f64).ln(),
                view.bound_violation(b),
                view.ledger_holds()
            );
        }
    }
    Ok(())
}
