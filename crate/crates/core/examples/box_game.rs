//! The box game with resets: BoxBreaker always empties the heaviest box and
//! the weights stay below `b (1 + ln(m + k))` whatever BoxMaker does.
//!
//! cargo run --example box_game -- [m] [b] [rounds]

use fastmaker::box_degree::{exhaustive_box_max, BoxMaker, BoxMakerPolicy, BoxState};
use fastmaker::rng::rng_from;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(32);
    let b: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let rounds: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(10_000);

    let mut rng = rng_from(11, 0);
    for policy in [BoxMakerPolicy::GreedyStack, BoxMakerPolicy::Survivors, BoxMakerPolicy::Random] {
        let mut state = BoxState::new(m, b);
        let mut maker = BoxMaker::new(policy, m);
        for _ in 0..rounds {
            let place = maker.placement(&state, &mut rng);
            let reset = state.play_round(&place);
            maker.after_reset(reset);
        }
        println!(
            "{policy:?}: m={m} b={b}, {rounds} rounds, heaviest box ever {} (final bound {:.2}), violations {}",
            state.max_seen(),
            state.bound(),
            state.violations()
        );
    }
    for b in 1..=3 {
        let (best, violations) = exhaustive_box_max(3, b, 6);
        let bound = b as f64 * (1.0 + 9f64.ln());
        println!("exhaustive m=3 b={b} over 6 rounds: best BoxMaker reaches {best} (bound at round 6 {bound:.2}), violations {violations}");
    }
}
