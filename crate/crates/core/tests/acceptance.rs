//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Every expected value is recomputed here
//! by a checker that does not share code with the library under test.

use std::cell::RefCell;
use std::collections::HashMap;
use std::process::ExitCode;
use std::rc::Rc;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;

use fastmaker::box_degree::{exhaustive_box_max, BoxMaker, BoxMakerPolicy, BoxState, DegreeGameMaker, DegreeGameView};
use fastmaker::breakers::{BreakerKind, GameTreeSolver, Hypergraph, HypergraphObjective, PotentialBreaker, SolverMaker};
use fastmaker::engine::{maker_graph, play, Certificate, GameConfig, NoObjective, Outcome, Transcript};
use fastmaker::experiment::{
    csv_string, make_breaker, regenerate_host, replay, run_experiment, transcript_params, ExperimentSpec, GameKind,
    SeedRange, SummaryRow,
};
use fastmaker::graph::{
    audit_gnp, build_gk, gen_gnp, long_directed_path, random_tournament, sample_pair_property, AuditConfig, Digraph,
    GkPairing, GkSpec, GnpParams, Graph,
};
use fastmaker::makers::{BuildGoal, ExpanderStrategy, StrategyConstants};
use fastmaker::oracles::{expander_check, vertex_connectivity, ExpanderParams};
use fastmaker::rng::{rng_from, stream};

struct Line {
    pass: bool,
    detail: String,
}

fn line(pass: bool, detail: impl Into<String>) -> Line {
    Line { pass, detail: detail.into() }
}

// ---------------------------------------------------------------- checkers

/// Plain minimax over claimed-element bitmasks: can Maker force a full set?
/// Turn order is recomputed from the number of claimed elements.
fn naive_maker_wins(sets: &[u32], ground: usize, cfg: &GameConfig, memo: &mut HashMap<(u32, u32), bool>) -> bool {
    fn go(sets: &[u32], full: u32, cfg: &GameConfig, m: u32, b: u32, memo: &mut HashMap<(u32, u32), bool>) -> bool {
        if sets.iter().any(|&s| s & m == s) {
            return true;
        }
        if sets.iter().all(|&s| s & b != 0) || (m | b) == full {
            return false;
        }
        if let Some(&v) = memo.get(&(m, b)) {
            return v;
        }
        let t = (m | b).count_ones() as usize % (cfg.a + cfg.b);
        let maker_turn = if cfg.maker_first { t < cfg.a } else { t >= cfg.b };
        let free = full & !(m | b);
        let mut result = !maker_turn;
        for x in 0..32 {
            if free & (1 << x) == 0 {
                continue;
            }
            let r = if maker_turn {
                go(sets, full, cfg, m | 1 << x, b, memo)
            } else {
                go(sets, full, cfg, m, b | 1 << x, memo)
            };
            if maker_turn && r {
                result = true;
                break;
            }
            if !maker_turn && !r {
                result = false;
                break;
            }
        }
        memo.insert((m, b), result);
        result
    }
    let full = if ground == 32 { u32::MAX } else { (1u32 << ground) - 1 };
    go(sets, full, cfg, 0, 0, memo)
}

/// All `k`-subsets of `0..n` as bitmasks.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).collect()
}

fn adjacency(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u as usize] |= 1 << v;
        adj[v as usize] |= 1 << u;
    }
    adj
}

fn neighbourhood(adj: &[u32], set: u32) -> u32 {
    (0..adj.len()).filter(|&v| set & (1 << v) != 0).fold(0, |acc, v| acc | adj[v])
}

/// Double enumeration of the `(R, c)`-expander definition.
fn naive_expander(g: &Graph, r: usize, c: f64) -> bool {
    let adj = adjacency(g);
    let n = g.n();
    for k in 1..=r.min(n) {
        for x in subsets(n, k) {
            let ext = neighbourhood(&adj, x) & !x;
            if (ext.count_ones() as f64) < c * k as f64 {
                return false;
            }
        }
    }
    if 2 * r <= n {
        let sets = subsets(n, r);
        for &x in &sets {
            let nx = neighbourhood(&adj, x);
            for &y in &sets {
                if x & y == 0 && nx & y == 0 {
                    return false;
                }
            }
        }
    }
    true
}

fn connected_without(adj: &[u32], removed: u32) -> bool {
    let n = adj.len();
    let alive = ((1u64 << n) - 1) as u32 & !removed;
    if alive == 0 {
        return true;
    }
    let start = alive.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let next = adj[v] & alive & !seen;
        seen |= next;
        stack.extend((0..n).filter(|&w| next & (1 << w) != 0));
    }
    seen == alive
}

/// Vertex connectivity by trying every vertex subset as a cut.
fn naive_connectivity(g: &Graph) -> usize {
    let adj = adjacency(g);
    let n = g.n();
    for k in 0..n.saturating_sub(1) {
        if subsets(n, k).into_iter().any(|s| !connected_without(&adj, s)) {
            return k;
        }
    }
    n - 1
}

fn ln_binom(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Smallest `m` for which the expected number of ordered disjoint m-set
/// pairs without an arc from the first to the second in a random
/// tournament is below 1.
fn tournament_m(n: usize) -> usize {
    (1..=n / 2)
        .find(|&m| ln_binom(n, m) + ln_binom(n - m, m) - (m * m) as f64 * 2f64.ln() < 0.0)
        .expect("some m works")
}

/// Walks a certificate against Maker's edges in the rebuilt board.
fn certificate_holds(host: &Graph, t: &Transcript) -> Result<(), String> {
    let board = t.rebuild_board().map_err(|e| e.to_string())?;
    let owns = |u: usize, v: usize| host.edge_id(u, v).is_some_and(|e| board.is_maker(e));
    let n = host.n();
    match &t.last.certificate {
        Some(Certificate::Matching { pairs }) => {
            let mut seen = vec![false; n];
            for &(u, v) in pairs {
                if !owns(u, v) || seen[u] || seen[v] {
                    return Err(format!("bad matching edge {u}-{v}"));
                }
                seen[u] = true;
                seen[v] = true;
            }
            seen.iter().all(|&s| s).then_some(()).ok_or_else(|| "matching misses a vertex".into())
        }
        Some(Certificate::HamiltonCycle { cycle }) => {
            let mut seen = vec![false; n];
            if cycle.len() != n {
                return Err(format!("cycle has {} of {n} vertices", cycle.len()));
            }
            for (i, &v) in cycle.iter().enumerate() {
                let w = cycle[(i + 1) % n];
                if seen[v] || !owns(v, w) {
                    return Err(format!("bad cycle step {v}-{w}"));
                }
                seen[v] = true;
            }
            Ok(())
        }
        Some(Certificate::Connectivity { k }) => {
            let kappa = vertex_connectivity(&maker_graph(host, &board));
            (kappa >= *k).then_some(()).ok_or_else(|| format!("Maker graph is only {kappa}-connected"))
        }
        other => Err(format!("unexpected certificate {other:?}")),
    }
}

// ---------------------------------------------------------------- criteria

fn criterion1() -> Line {
    let start = Instant::now();
    let mut rng = rng_from(2024, 0);
    let biases = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)];
    let (mut games, mut breaker_wins, mut oracle_breaker, mut solver_agree) = (0, 0, 0, 0);
    while games < 240 {
        let (a, b) = biases[games % biases.len()];
        let ground = rng.gen_range(4..=12);
        let count = rng.gen_range(1..=8);
        let sets: Vec<Vec<u32>> = (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=ground);
                rand::seq::index::sample(&mut rng, ground, size).into_iter().map(|x| x as u32).collect()
            })
            .collect();
        let masks: Vec<u32> = sets.iter().map(|s| s.iter().fold(0, |m, &x| m | 1 << x)).collect();
        // criterion computed independently of the library
        let sum: f64 = sets.iter().map(|s| (1.0 + b as f64).powf(-(s.len() as f64) / a as f64)).sum();
        if sum >= 1.0 / (1.0 + b as f64) {
            continue;
        }
        let h = Hypergraph::new(ground, sets).expect("valid hypergraph");
        let cfg = GameConfig::new(a, b);
        games += 1;
        let maker_can_win = naive_maker_wins(&masks, ground, &cfg, &mut HashMap::new());
        oracle_breaker += usize::from(!maker_can_win);
        let solver = Rc::new(RefCell::new(GameTreeSolver::new(&h, &cfg)));
        solver_agree += usize::from(solver.borrow_mut().solve() == maker_can_win);
        let mut maker = SolverMaker::new(solver);
        let mut breaker = PotentialBreaker::new(h.clone(), &cfg);
        let mut objective = HypergraphObjective::new(h.clone());
        let (t, board) = play(ground, &cfg, &mut maker, &mut breaker, &mut objective, games as u64).expect("game runs");
        let maker_full = masks.iter().any(|&s| (0..32).all(|x| s & (1 << x) == 0 || board.is_maker(x)));
        breaker_wins += usize::from(t.outcome() == &Outcome::BreakerWin && !maker_full);
    }
    let secs = start.elapsed().as_secs_f64();
    line(
        breaker_wins == games && oracle_breaker == games && solver_agree == games && secs < 300.0,
        format!(
            "{games} hypergraphs under the criterion (|X| <= 12, biases {biases:?}); potential Breaker won {breaker_wins}, \
             minimax says Breaker wins {oracle_breaker}, solver agrees {solver_agree}; {secs:.1}s"
        ),
    )
}

fn criterion2() -> Line {
    let mut bad = Vec::new();
    // exhaustive BoxMaker, m = 3, 6 rounds
    for b in 1..=3 {
        let (best, violations) = exhaustive_box_max(3, b, 6);
        let bound = b as f64 * (1.0 + 9f64.ln());
        if violations > 0 || best as f64 > bound {
            bad.push(format!("exhaustive b={b}: max {best} vs {bound:.2}, {violations} violations"));
        }
    }
    // 10^4 rounds per (m, b, policy); the weights are tracked here as well
    let mut rng = rng_from(77, 0);
    let mut runs = 0;
    for m in [1, 2, 3, 8, 17, 32, 64] {
        for b in 1..=3 {
            for policy in [BoxMakerPolicy::GreedyStack, BoxMakerPolicy::Survivors, BoxMakerPolicy::Random] {
                runs += 1;
                let mut state = BoxState::new(m, b);
                let mut maker = BoxMaker::new(policy, m);
                let mut w = vec![0u64; m];
                for k in 1..=10_000usize {
                    let place = maker.placement(&state, &mut rng);
                    assert_eq!(place.iter().sum::<usize>(), b);
                    w.iter_mut().zip(&place).for_each(|(x, &p)| *x += p as u64);
                    let top = *w.iter().max().unwrap();
                    if top as f64 > b as f64 * (1.0 + ((m + k) as f64).ln()) {
                        bad.push(format!("m={m} b={b} {policy:?} round {k}: weight {top}"));
                        break;
                    }
                    let heaviest = (0..m).find(|&i| w[i] == top).unwrap();
                    let reset = state.play_round(&place);
                    if reset != heaviest {
                        bad.push(format!("m={m} b={b} {policy:?}: reset box {reset}, heaviest {heaviest}"));
                        break;
                    }
                    w[reset] = 0;
                    maker.after_reset(reset);
                }
                if state.violations() > 0 {
                    bad.push(format!("m={m} b={b} {policy:?}: monitor saw {} violations", state.violations()));
                }
            }
        }
    }
    // degree game: full transcripts, degrees recounted from the final board
    let mut games = 0;
    for (n, p) in [(200, 0.2), (400, 0.1)] {
        for seed in 0..3 {
            let host = Arc::new(gen_gnp(GnpParams::new(n, p, seed).unwrap()).unwrap());
            for split in [n / 4, n] {
                let v1: Vec<usize> = (0..split).collect();
                let v2: Vec<usize> = (n / 8..n).collect();
                let mut in_v2 = vec![false; n];
                v2.iter().for_each(|&v| in_v2[v] = true);
                for b in [1, 2, 3] {
                    for kind in [BreakerKind::Random, BreakerKind::DegreeAttacker] {
                        games += 1;
                        let mut maker = DegreeGameMaker::new(DegreeGameView::new(Arc::clone(&host), &v1, &v2));
                        let mut breaker = make_breaker(kind, &host);
                        let cfg = GameConfig::new(1, b);
                        let (t, _) = play(host.edge_count(), &cfg, &mut maker, &mut breaker, &mut NoObjective, seed)
                            .expect("degree game runs");
                        let board = t.rebuild_board().expect("transcript rebuilds");
                        let factor = 4.0 * b as f64 * (n as f64).ln();
                        for &v in &v1 {
                            let (mut dm, mut db) = (0usize, 0usize);
                            for (w, e) in host.incident(v) {
                                if in_v2[w] {
                                    dm += usize::from(board.is_maker(e));
                                    db += usize::from(board.is_breaker(e));
                                }
                            }
                            if db as f64 > factor * (dm as f64 + 1.0) {
                                bad.push(format!("degree game n={n} b={b} {}: vertex {v} d_B={db} d_M={dm}", kind.label()));
                            }
                        }
                    }
                }
            }
        }
    }
    line(
        bad.is_empty(),
        format!(
            "exhaustive m=3 x 6 rounds (b=1..3), {runs} runs of 10^4 rounds (m <= 64), {games} full degree games; {}",
            if bad.is_empty() { "no violations".to_string() } else { bad.join("; ") }
        ),
    )
}

fn criterion3() -> Line {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for k in 2..=5 {
        for n in GkSpec::smallest_n(k, 3) {
            for pairing in [GkPairing::Identity, GkPairing::Random(n as u64 + 17)] {
                checked += 1;
                let g = build_gk(k, n, pairing).expect("legal size");
                let regular = (0..n).all(|v| g.degree(v) == k);
                let lib = vertex_connectivity(&g);
                let naive = naive_connectivity(&g);
                if !regular || lib != k || naive != k {
                    bad.push(format!("k={k} n={n} {pairing:?}: regular {regular}, kappa {lib} / brute force {naive}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    line(
        bad.is_empty() && secs < 60.0,
        format!("{checked} gadgets (k=2..5, three smallest n, identity and random pairings); {} {secs:.1}s", bad.join("; ")),
    )
}

fn criterion4() -> Line {
    let mut bad = Vec::new();
    let mut shortest_margin = i64::MAX;
    let mut total = 0;
    for (n, count) in [(50, 50), (200, 50)] {
        let m = tournament_m(n);
        for seed in 0..count {
            total += 1;
            let d: Digraph = random_tournament(n, &mut rng_from(seed, stream::GRAPH));
            if let Some((s, t)) = sample_pair_property(&d, m, 10_000, &mut rng_from(seed, stream::AUDIT)) {
                bad.push(format!("n={n} seed {seed}: pair property fails on {s:?} -> {t:?}"));
                continue;
            }
            let path = long_directed_path(&d, m);
            let mut seen = vec![false; n];
            let simple = path.iter().all(|&v| !std::mem::replace(&mut seen[v], true));
            let arcs = path.windows(2).all(|w| d.has_arc(w[0], w[1]));
            let length = path.len() as i64 - 1;
            let need = (n + 1 - 2 * m) as i64;
            shortest_margin = shortest_margin.min(length - need);
            if !simple || !arcs || length < need {
                bad.push(format!("n={n} seed {seed}: length {length} < {need} or not a path"));
            }
        }
    }
    line(
        bad.is_empty(),
        format!(
            "{total} tournaments (n=50 with m={}, n=200 with m={}; pair property sampled 10^4 times each); \
             smallest surplus over n-2m+1 is {shortest_margin}; {}",
            tournament_m(50),
            tournament_m(200),
            bad.join("; ")
        ),
    )
}

fn criterion5() -> Line {
    let (r, c) = (3, 1.0);
    let consts = StrategyConstants::default();
    let mut rates = Vec::new();
    let mut pass = true;
    let (mut compared, mut disagree) = (0, Vec::new());
    let mut judge = |g: &Graph, tag: String, compared: &mut usize| -> bool {
        let exact = expander_check(g, &ExpanderParams::new(r, c).exact()).expect("n within exact limit");
        let naive = naive_expander(g, r, c);
        let sampled = expander_check(g, &ExpanderParams::new(r, c).sampled(2000, *compared as u64)).expect("sampled");
        *compared += 1;
        if exact.pass != naive || sampled.pass != exact.pass {
            disagree.push(format!("{tag}: exact {} naive {naive} sampled {}", exact.pass, sampled.pass));
        }
        naive
    };
    for n in [10, 11, 12] {
        let host = Arc::new(Graph::complete(n));
        for kind in [BreakerKind::Random, BreakerKind::DegreeAttacker] {
            let mut wins = 0;
            for seed in 0..50 {
                let goal = BuildGoal::Expander { r, c };
                let mut maker = ExpanderStrategy::new(Arc::clone(&host), (0..n).collect(), goal, 1, &consts).unwrap();
                let mut breaker = make_breaker(kind, &host);
                let (t, board) = play(host.edge_count(), &GameConfig::new(1, 1), &mut maker, &mut breaker, &mut NoObjective, seed)
                    .expect("game runs");
                let ok = judge(&maker_graph(&host, &board), format!("K_{n} {} seed {seed}", kind.label()), &mut compared);
                wins += usize::from(ok && t.outcome() == &Outcome::MakerWin);
            }
            pass &= wins * 100 >= 95 * 50;
            rates.push(format!("K_{n}/{}: {wins}/50", kind.label()));
        }
    }
    // further sampled-versus-exact comparisons on random graphs up to n = 14
    let mut rng = rng_from(5, 0);
    for i in 0..300u64 {
        let n = rng.gen_range(7..=14);
        let p = rng.gen_range(0.3..0.95);
        let g = gen_gnp(GnpParams::new(n, p, i).unwrap()).unwrap();
        judge(&g, format!("G({n},{p:.2}) seed {i}"), &mut compared);
    }
    line(
        pass && disagree.is_empty(),
        format!(
            "expander builder, R=3 c=1, b=1: {}; {compared} graphs with n <= 14 judged exact = brute force = sampled{}",
            rates.join(", "),
            if disagree.is_empty() { String::new() } else { format!("; disagreements: {}", disagree.join("; ")) }
        ),
    )
}

struct Scaled {
    rows: Vec<SummaryRow>,
    transcripts: Vec<Transcript>,
}

fn scaled_runs() -> Vec<(ExperimentSpec, Scaled, f64)> {
    let games = [(GameKind::Pm, 5000), (GameKind::Ham, 5000), (GameKind::Kconn(3), 3000)];
    games
        .into_iter()
        .map(|(game, n)| {
            let mut spec = ExperimentSpec::new(game, vec![n], SeedRange::new(0, 20));
            spec.breakers = vec![BreakerKind::Random, BreakerKind::DegreeAttacker];
            let start = Instant::now();
            let res = run_experiment(&spec).expect("experiment runs");
            let secs = start.elapsed().as_secs_f64();
            (spec, Scaled { rows: res.rows, transcripts: res.transcripts }, secs)
        })
        .collect()
}

fn criterion6(runs: &[(ExperimentSpec, Scaled, f64)]) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    let mut total_secs = 0.0;
    for (spec, res, secs) in runs {
        total_secs += secs;
        let n = spec.n[0];
        let (cap, need) = match spec.game {
            GameKind::Pm => (n / 2 + n / 20, 0.90),
            GameKind::Ham => (n + n / 10, 0.80),
            GameKind::Kconn(k) => (k * n / 2 + n / 10, 0.80),
            GameKind::PmBipartite => unreachable!(),
        };
        for kind in &spec.breakers {
            let mut ok = 0;
            let mut worst = 0;
            let mut failures = Vec::new();
            let selected = res.rows.iter().zip(&res.transcripts).filter(|(r, _)| r.breaker == kind.label());
            let mut total = 0;
            for (row, t) in selected {
                total += 1;
                let host = regenerate_host(t).expect("host regenerates");
                let cert = certificate_holds(&host, t);
                let win = t.outcome() == &Outcome::MakerWin && cert.is_ok();
                if win {
                    worst = worst.max(row.maker_moves);
                }
                if win && row.maker_moves <= cap {
                    ok += 1;
                } else {
                    failures.push(format!("s{} {} {}", row.seed, row.outcome, row.maker_moves));
                }
            }
            let rate = ok as f64 / total as f64;
            pass &= rate >= need;
            parts.push(format!(
                "{} n={n} {}: {ok}/{total} within {cap} (worst {worst}){}",
                spec.game,
                kind.label(),
                if failures.is_empty() { String::new() } else { format!(" [{}]", failures.join(", ")) }
            ));
        }
    }
    pass &= total_secs < 1800.0;
    line(pass, format!("{}; {total_secs:.0}s", parts.join("; ")))
}

fn criterion7(runs: &[(ExperimentSpec, Scaled, f64)]) -> Line {
    let mut bad = Vec::new();
    let mut replayed = 0;
    for (_, res, _) in runs {
        for t in &res.transcripts {
            replayed += 1;
            let host = regenerate_host(t).expect("host regenerates");
            match replay(t, &host) {
                Ok(r) => {
                    let same_board = r.board == t.rebuild_board().expect("rebuild");
                    let claimed = t.outcome() == &Outcome::MakerWin;
                    if !same_board || r.verdict.pass != claimed {
                        bad.push(format!("{:?}: board {same_board}, verdict {}", transcript_params(t).map(|p| p.n), r.verdict.pass));
                    }
                }
                Err(e) => bad.push(e.to_string()),
            }
        }
    }
    // CSV files written by two reruns (one threaded), and the first run's rows
    let dir = tempfile::tempdir().expect("temp dir");
    let mut stable = true;
    let mut files = 0;
    for (spec, res, _) in runs {
        let mut bytes = Vec::new();
        for (i, threads) in [1, 2].into_iter().enumerate() {
            let mut again = spec.clone();
            again.seeds = SeedRange::new(0, 3);
            again.threads = threads;
            let path = dir.path().join(format!("{}-{i}.csv", spec.game));
            again.outputs.csv = Some(path.clone());
            run_experiment(&again).expect("rerun");
            bytes.push(std::fs::read(&path).expect("csv written"));
            files += 1;
        }
        let first: Vec<SummaryRow> = res.rows.iter().filter(|r| r.seed < 3).cloned().collect();
        stable &= bytes[0] == bytes[1] && bytes[0] == csv_string(&first, false).into_bytes();
    }
    // a transcript survives a JSONL round trip byte for byte
    let t = &runs[0].1.transcripts[0];
    let mut a = Vec::new();
    t.write_jsonl(&mut a).unwrap();
    let back = Transcript::read_jsonl(a.as_slice()).unwrap();
    let mut b = Vec::new();
    back.write_jsonl(&mut b).unwrap();
    let roundtrip = a == b;
    line(
        bad.is_empty() && stable && roundtrip,
        format!(
            "{replayed} transcripts replayed, {} mismatches; {files} rerun CSV files byte-identical to each other and to the first run: {stable}; JSONL round trip stable: {roundtrip}{}",
            bad.len(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn criterion8() -> Line {
    let cfg = AuditConfig::default();
    let n = 5000;
    let (mut a1, mut a2) = (0, 0);
    for seed in 0..20 {
        let g = gen_gnp(GnpParams::new(n, cfg.p(n), seed).unwrap()).unwrap();
        let r = audit_gnp(&g, &AuditConfig { seed, ..cfg.clone() }).expect("audit runs");
        a1 += usize::from(r.a1.pass);
        a2 += usize::from(r.a2.pass);
    }
    // forced cases at a small size, derived from the definitions directly
    let small = 300;
    let nf = small as f64;
    let p = cfg.p(small);
    let lnk = nf.ln().powf(cfg.k);
    let s = cfg.a3_size(small) as f64;
    let empty_expect = (0.0 >= cfg.a1_low * lnk, true, 0.0 >= cfg.a3_const * s * s * p);
    let deg = nf - 1.0;
    let full_a1 = deg >= cfg.a1_low * lnk && deg <= cfg.a1_high * lnk;
    // |E(U)| = C(u,2) < u^2 <= a2_const u^2 p whenever a2_const p >= 1/2
    let full_a2 = cfg.a2_const * p >= 0.5;
    let full_expect = (full_a1, full_a2, s * s >= cfg.a3_const * s * s * p);
    let e = audit_gnp(&Graph::empty(small), &cfg).expect("audit runs");
    let f = audit_gnp(&Graph::complete(small), &cfg).expect("audit runs");
    let empty_got = (e.a1.pass, e.a2.pass, e.a3.pass);
    let full_got = (f.a1.pass, f.a2.pass, f.a3.pass);
    line(
        a1 >= 19 && a2 >= 19 && empty_got == empty_expect && full_got == full_expect,
        format!(
            "G(5000, ln^3 n/n): A1 {a1}/20, A2 {a2}/20; empty n={small} (A1,A2,A3) = {empty_got:?} expected {empty_expect:?}; \
             K_{small} = {full_got:?} expected {full_expect:?}"
        ),
    )
}

fn report(i: usize, l: &Line) {
    println!("criterion {i}: {} - {}", if l.pass { "PASS" } else { "FAIL" }, l.detail);
}

fn main() -> ExitCode {
    // `cargo test -- <filter>` style arguments are accepted and ignored,
    // except `--list`, which the test runner uses for discovery
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut all = true;
    let mut run = |i: usize, l: Line| {
        report(i, &l);
        all &= l.pass;
    };
    run(1, criterion1());
    run(2, criterion2());
    run(3, criterion3());
    run(4, criterion4());
    run(5, criterion5());
    let runs = scaled_runs();
    run(6, criterion6(&runs));
    run(7, criterion7(&runs));
    run(8, criterion8());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
