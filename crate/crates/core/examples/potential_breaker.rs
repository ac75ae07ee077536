//! Potential-function Breaker on small hypergraphs: whenever the family
//! satisfies `sum (1+b)^(-|F|/a) < 1/(1+b)` Breaker wins, even against a
//! Maker that plays the game tree perfectly.
//!
//! cargo run --example potential_breaker -- [count] [seed]

use std::cell::RefCell;
use std::rc::Rc;

use rand::Rng;

use fastmaker::breakers::{best_response_wins, GameTreeSolver, Hypergraph, HypergraphObjective, PotentialBreaker, SolverMaker};
use fastmaker::engine::{play, GameConfig, Outcome};
use fastmaker::rng::rng_from;

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let count: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(40);
    let seed: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);

    let mut rng = rng_from(seed, 0);
    let (mut played, mut breaker_wins, mut maker_could_win) = (0, 0, 0);
    while played < count {
        let ground = rng.gen_range(6..=12);
        let cfg = GameConfig::new(1, rng.gen_range(1..=2));
        let sets = (0..rng.gen_range(1..=6))
            .map(|_| {
                let size = rng.gen_range(3..=ground.min(8));
                rand::seq::index::sample(&mut rng, ground, size).into_iter().map(|x| x as u32).collect()
            })
            .collect();
        let h = Hypergraph::new(ground, sets)?;
        if !h.satisfies_criterion(cfg.a, cfg.b) {
            continue;
        }
        played += 1;
        let solver = Rc::new(RefCell::new(GameTreeSolver::new(&h, &cfg)));
        let mut maker = SolverMaker::new(solver);
        let mut breaker = PotentialBreaker::new(h.clone(), &cfg);
        let mut objective = HypergraphObjective::new(h.clone());
        let (t, _) = play(h.ground(), &cfg, &mut maker, &mut breaker, &mut objective, played as u64)?;
        breaker_wins += usize::from(t.outcome() == &Outcome::BreakerWin);
        maker_could_win += usize::from(best_response_wins(&h, &cfg));
    }
    println!("{played} hypergraphs under the criterion: potential Breaker won {breaker_wins}");
    println!("positions where some Maker line beats the potential Breaker: {maker_could_win}");

    // Breaker moves first above; with Maker first, two 2-sets sharing an
    // element (not under the criterion) are a Maker win
    let h = Hypergraph::new(3, vec![vec![0, 1], vec![0, 2]])?;
    let cfg = GameConfig { maker_first: true, ..GameConfig::new(1, 1) };
    println!(
        "sets {{0,1}}, {{0,2}}: ES sum {:.3} vs 1/(1+b) = 0.5, criterion {}, Maker moving first wins: {}",
        h.es_sum(1, 1),
        h.satisfies_criterion(1, 1),
        GameTreeSolver::new(&h, &cfg).solve()
    );
    Ok(())
}
