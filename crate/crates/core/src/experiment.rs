//! Reproducible experiment harness: boards from a JSON spec, one game per
//! `(n, breaker, seed)`, oracle verification of every claimed win, a CSV
//! summary and replay of transcripts by re-simulation.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::breakers::{BreakerKind, DegreeAttacker, RandomBreaker};
use crate::engine::{
    play, Board, BreakerStrategy, GameConfig, GraphGoal, GraphObjective, MakerStrategy, Objective, Outcome,
    Transcript,
};
use crate::error::{invalid, Error, Result};
use crate::graph::{gen_bipartite, gen_gnp, BipartiteGraph, Graph, GnpParams};
use crate::makers::{ham_strategy, kconn_strategy, pm_bipartite_strategy, pm_strategy, StrategyConstants, Thresholds};
use crate::oracles::Verdict;

/// Which game is played on the board.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GameKind {
    Pm,
    PmBipartite,
    Ham,
    /// k-vertex-connectivity.
    Kconn(usize),
}

impl GameKind {
    /// Leading term of Maker's move count: `n/2`, `n` or `kn/2`.
    pub fn budget(self, n: usize) -> usize {
        match self {
            GameKind::Pm | GameKind::PmBipartite => n / 2,
            GameKind::Ham => n,
            GameKind::Kconn(k) => k * n / 2,
        }
    }

    pub fn goal(self) -> GraphGoal {
        match self {
            GameKind::Pm | GameKind::PmBipartite => GraphGoal::PerfectMatching,
            GameKind::Ham => GraphGoal::HamiltonCycle,
            GameKind::Kconn(k) => GraphGoal::Connectivity(k),
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameKind::Pm => f.write_str("pm"),
            GameKind::PmBipartite => f.write_str("pm-bipartite"),
            GameKind::Ham => f.write_str("ham"),
            GameKind::Kconn(k) => write!(f, "kconn{k}"),
        }
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm" => Ok(GameKind::Pm),
            "pm-bipartite" => Ok(GameKind::PmBipartite),
            "ham" => Ok(GameKind::Ham),
            _ => s
                .strip_prefix("kconn")
                .map(|k| k.trim_start_matches([':', '=']))
                .and_then(|k| k.parse().ok())
                .map(GameKind::Kconn)
                .ok_or_else(|| invalid(format!("unknown game `{s}` (pm, pm-bipartite, ham, kconn<k>)"))),
        }
    }
}

/// Edge probability of the board.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PRule {
    Explicit(f64),
    /// `ln^e n / n`.
    LogPower(f64),
}

impl PRule {
    pub fn eval(self, n: usize) -> f64 {
        match self {
            PRule::Explicit(p) => p,
            PRule::LogPower(e) => GnpParams::log_power_p(n, e),
        }
    }
}

impl Default for PRule {
    fn default() -> Self {
        PRule::LogPower(3.0)
    }
}

/// Half-open seed range `start..end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRange {
    pub start: u64,
    pub end: u64,
}

impl SeedRange {
    pub fn new(start: u64, end: u64) -> Self {
        SeedRange { start, end }
    }

    pub fn iter(self) -> std::ops::Range<u64> {
        self.start..self.end
    }

    pub fn len(self) -> usize {
        self.end.saturating_sub(self.start) as usize
    }

    pub fn is_empty(self) -> bool {
        self.end <= self.start
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Outputs {
    pub csv: Option<PathBuf>,
    /// Directory for one JSONL transcript per game.
    pub transcripts: Option<PathBuf>,
    /// Add a `wall_ms` column to the CSV file; without it the file is a
    /// pure function of the experiment settings.
    pub wall_time: bool,
}

fn one() -> usize {
    1
}

fn default_breakers() -> Vec<BreakerKind> {
    vec![BreakerKind::Random]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub game: GameKind,
    pub n: Vec<usize>,
    #[serde(default)]
    pub p: PRule,
    #[serde(default = "one")]
    pub a: usize,
    #[serde(default = "one")]
    pub b: usize,
    #[serde(default = "default_breakers")]
    pub breakers: Vec<BreakerKind>,
    pub seeds: SeedRange,
    #[serde(default)]
    pub constants: StrategyConstants,
    /// Cap on Maker moves per game, as a multiple of the budget.
    #[serde(default)]
    pub move_cap: Option<f64>,
    #[serde(default = "one")]
    pub threads: usize,
    #[serde(default)]
    pub outputs: Outputs,
}

impl ExperimentSpec {
    pub fn new(game: GameKind, n: Vec<usize>, seeds: SeedRange) -> Self {
        ExperimentSpec {
            game,
            n,
            p: PRule::default(),
            a: 1,
            b: 1,
            breakers: default_breakers(),
            seeds,
            constants: StrategyConstants::default(),
            move_cap: None,
            threads: 1,
            outputs: Outputs::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(invalid(format!("empty seed range {}..{}", self.seeds.start, self.seeds.end)));
        }
        if self.n.is_empty() {
            return Err(invalid("no board sizes given"));
        }
        if self.breakers.is_empty() {
            return Err(invalid("empty Breaker roster"));
        }
        if self.threads == 0 {
            return Err(invalid("threads must be at least 1"));
        }
        if self.move_cap.is_some_and(|c| !(c > 0.0)) {
            return Err(invalid("move cap must be positive"));
        }
        GameConfig::new(self.a, self.b).validate()?;
        self.constants.validate()?;
        for &n in &self.n {
            let p = self.p.eval(n);
            if !(p > 0.0 && p <= 1.0) {
                return Err(invalid(format!("edge probability {p} at n = {n} is outside (0, 1]")));
            }
            match self.game {
                GameKind::Ham if n < 3 => return Err(invalid("a Hamilton cycle needs n >= 3")),
                GameKind::PmBipartite if n % 2 == 1 => return Err(invalid("bipartite boards need even n")),
                GameKind::Kconn(k) if k < 2 || n / (k - 1) < 3 => {
                    return Err(invalid(format!("kconn{k} needs k >= 2 and parts of at least 3 vertices")))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn config(&self, n: usize) -> GameConfig {
        let mut cfg = GameConfig::new(self.a, self.b);
        cfg.move_limit = self.move_cap.map(|c| (c * self.game.budget(n) as f64).ceil() as usize);
        cfg
    }
}

/// One game of an experiment. Columns are written in this order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub game: String,
    pub n: usize,
    pub p: f64,
    pub breaker: String,
    pub seed: u64,
    pub outcome: String,
    pub maker_moves: usize,
    pub budget: usize,
    pub slack: i64,
    pub wall_ms: f64,
}

impl SummaryRow {
    pub fn is_win(&self) -> bool {
        self.outcome == "maker-win"
    }

    pub fn is_certificate_failure(&self) -> bool {
        self.outcome == CERTIFICATE_FAILURE
    }
}

pub const CERTIFICATE_FAILURE: &str = "certificate-failure";

/// Writes the CSV summary. Without `wall_time` the last column is dropped,
/// which makes the bytes a pure function of the experiment settings.
pub fn write_csv<W: Write>(rows: &[SummaryRow], out: W, wall_time: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["game", "n", "p", "breaker", "seed", "outcome", "maker_moves", "budget", "slack"];
    if wall_time {
        header.push("wall_ms");
    }
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![
            r.game.clone(),
            r.n.to_string(),
            format!("{:.6}", r.p),
            r.breaker.clone(),
            r.seed.to_string(),
            r.outcome.clone(),
            r.maker_moves.to_string(),
            r.budget.to_string(),
            r.slack.to_string(),
        ];
        if wall_time {
            rec.push(format!("{:.3}", r.wall_ms));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[SummaryRow], wall_time: bool) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf, wall_time).expect("in-memory csv");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// The board of one game, generated from `(n, p, seed)`.
pub fn build_host(game: GameKind, n: usize, p: f64, seed: u64) -> Result<Arc<Graph>> {
    let g = match game {
        GameKind::PmBipartite => gen_bipartite(n, p, seed)?.into_graph(),
        _ => gen_gnp(GnpParams::new(n, p, seed)?)?,
    };
    Ok(Arc::new(g))
}

pub fn make_breaker(kind: BreakerKind, host: &Arc<Graph>) -> Box<dyn BreakerStrategy> {
    match kind {
        BreakerKind::Random => Box::new(RandomBreaker),
        BreakerKind::DegreeAttacker => Box::new(DegreeAttacker::new(Arc::clone(host))),
    }
}

/// Maker strategy for `game` on `host`, plus the thresholds it resolved.
pub fn make_maker(
    game: GameKind,
    host: &Arc<Graph>,
    b: usize,
    consts: &StrategyConstants,
    seed: u64,
) -> Result<(Box<dyn MakerStrategy>, serde_json::Value)> {
    let n = host.n();
    Ok(match game {
        GameKind::Pm => {
            let m = pm_strategy(Arc::clone(host), b, consts)?;
            let th = serde_json::to_value(m.thresholds())?;
            (Box::new(m), th)
        }
        GameKind::PmBipartite => {
            let bg = BipartiteGraph::new((**host).clone(), n / 2)?;
            let m = pm_bipartite_strategy(&bg, b, consts)?;
            let th = serde_json::to_value(m.thresholds())?;
            (Box::new(m), th)
        }
        GameKind::Ham => {
            let m = ham_strategy(Arc::clone(host), b, consts)?;
            let th = serde_json::to_value(m.thresholds())?;
            (Box::new(m), th)
        }
        GameKind::Kconn(k) => {
            let m = kconn_strategy(Arc::clone(host), b, k, consts, seed)?;
            let part = n / (k - 1).max(1);
            let th: BTreeMap<&str, Thresholds> =
                [("part", consts.ham_thresholds(part)), ("pair", consts.pm_thresholds(2 * part))].into();
            (Box::new(m), serde_json::to_value(th)?)
        }
    })
}

/// Everything needed to rerun a game, stored in the transcript header.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub game: GameKind,
    pub n: usize,
    pub p: f64,
    pub edges: usize,
    pub breaker: BreakerKind,
    pub constants: StrategyConstants,
    pub thresholds: serde_json::Value,
}

/// Plays one game on `host` and fills the transcript header.
pub fn play_game(
    game: GameKind,
    host: &Arc<Graph>,
    p: f64,
    cfg: &GameConfig,
    breaker: BreakerKind,
    consts: &StrategyConstants,
    seed: u64,
) -> Result<(Transcript, Board)> {
    let (mut maker, thresholds) = make_maker(game, host, cfg.b, consts, seed)?;
    let mut br = make_breaker(breaker, host);
    let mut objective = GraphObjective::new(Arc::clone(host), game.goal());
    let (mut t, board) = play(host.edge_count(), cfg, &mut maker, &mut br, &mut objective, seed)?;
    let params = GameParams {
        game,
        n: host.n(),
        p,
        edges: host.edge_count(),
        breaker,
        constants: consts.clone(),
        thresholds,
    };
    t.header.game = game.to_string();
    t.header.params = serde_json::to_value(params)?;
    Ok((t, board))
}

/// Re-checks the final board with the oracle, independently of the engine.
pub fn verify_transcript(host: &Arc<Graph>, game: GameKind, board: &Board, t: &Transcript) -> Verdict {
    GraphObjective::new(Arc::clone(host), game.goal()).verify(board, t.last.certificate.as_ref())
}

fn outcome_label(t: &Transcript, verdict: Option<&Verdict>) -> String {
    if t.outcome().is_certificate_failure() || verdict.is_some_and(|v| !v.pass) {
        CERTIFICATE_FAILURE.into()
    } else {
        t.outcome().label().into()
    }
}

pub struct ExperimentResult {
    pub rows: Vec<SummaryRow>,
    pub transcripts: Vec<Transcript>,
}

impl ExperimentResult {
    pub fn certificate_failures(&self) -> usize {
        self.rows.iter().filter(|r| r.is_certificate_failure()).count()
    }
}

fn run_one(spec: &ExperimentSpec, n: usize, breaker: BreakerKind, seed: u64) -> Result<(SummaryRow, Transcript)> {
    let start = Instant::now();
    let p = spec.p.eval(n);
    let host = build_host(spec.game, n, p, seed)?;
    let cfg = spec.config(n);
    let (t, board) = play_game(spec.game, &host, p, &cfg, breaker, &spec.constants, seed)?;
    let verdict = (t.outcome() == &Outcome::MakerWin).then(|| verify_transcript(&host, spec.game, &board, &t));
    let budget = spec.game.budget(n);
    let row = SummaryRow {
        game: spec.game.to_string(),
        n,
        p,
        breaker: breaker.label().into(),
        seed,
        outcome: outcome_label(&t, verdict.as_ref()),
        maker_moves: t.last.maker_moves,
        budget,
        slack: t.last.maker_moves as i64 - budget as i64,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((row, t))
}

/// Runs every `(n, breaker, seed)` tuple, in parallel when `threads > 1`,
/// and returns rows in canonical order. Writes the requested outputs.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let jobs: Vec<(usize, BreakerKind, u64)> = spec
        .n
        .iter()
        .flat_map(|&n| spec.breakers.iter().flat_map(move |&b| spec.seeds.iter().map(move |s| (n, b, s))))
        .collect();
    let slots: Vec<Mutex<Option<Result<(SummaryRow, Transcript)>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(&(n, b, s)) = jobs.get(i) else { break };
        let res = run_one(spec, n, b, s);
        *slots[i].lock().expect("slot lock") = Some(res);
    };
    std::thread::scope(|scope| {
        for _ in 1..spec.threads.min(jobs.len()) {
            scope.spawn(work);
        }
        work();
    });
    let mut rows = Vec::with_capacity(jobs.len());
    let mut transcripts = Vec::with_capacity(jobs.len());
    for slot in slots {
        let (row, t) = slot.into_inner().expect("slot lock").expect("every job ran")?;
        rows.push(row);
        transcripts.push(t);
    }
    if let Some(path) = &spec.outputs.csv {
        write_csv(&rows, std::fs::File::create(path)?, spec.outputs.wall_time)?;
    }
    if let Some(dir) = &spec.outputs.transcripts {
        std::fs::create_dir_all(dir)?;
        for (row, t) in rows.iter().zip(&transcripts) {
            let file = std::fs::File::create(transcript_path(dir, row))?;
            t.write_jsonl(std::io::BufWriter::new(file))?;
        }
    }
    Ok(ExperimentResult { rows, transcripts })
}

pub fn transcript_path(dir: &Path, row: &SummaryRow) -> PathBuf {
    dir.join(format!("{}-n{}-{}-s{}.jsonl", row.game, row.n, row.breaker, row.seed))
}

/// Wins, mean and worst slack per `(game, n, breaker)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupStats {
    pub game: String,
    pub n: usize,
    pub breaker: String,
    pub runs: usize,
    pub wins: usize,
    pub certificate_failures: usize,
    /// Over wins only.
    pub mean_slack: f64,
    pub max_slack: Option<i64>,
}

impl GroupStats {
    pub fn success_rate(&self) -> f64 {
        if self.runs == 0 { 0.0 } else { self.wins as f64 / self.runs as f64 }
    }

    /// Wins with at most `slack` moves over the budget.
    pub fn within(rows: &[SummaryRow], slack: i64) -> usize {
        rows.iter().filter(|r| r.is_win() && r.slack <= slack).count()
    }
}

pub fn aggregate(rows: &[SummaryRow]) -> Vec<GroupStats> {
    let mut groups: BTreeMap<(String, usize, String), Vec<&SummaryRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.game.clone(), r.n, r.breaker.clone())).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((game, n, breaker), rs)| {
            let wins: Vec<i64> = rs.iter().filter(|r| r.is_win()).map(|r| r.slack).collect();
            GroupStats {
                game,
                n,
                breaker,
                runs: rs.len(),
                wins: wins.len(),
                certificate_failures: rs.iter().filter(|r| r.is_certificate_failure()).count(),
                mean_slack: if wins.is_empty() { 0.0 } else { wins.iter().sum::<i64>() as f64 / wins.len() as f64 },
                max_slack: wins.iter().copied().max(),
            }
        })
        .collect()
}

/// Result of a replay: the rebuilt board and the oracle's verdict on it.
#[derive(Debug)]
pub struct Replay {
    pub board: Board,
    pub verdict: Verdict,
}

/// Game parameters recorded in a transcript header.
pub fn transcript_params(t: &Transcript) -> Result<GameParams> {
    serde_json::from_value(t.header.params.clone())
        .map_err(|e| Error::Parse(format!("transcript header lacks game parameters: {e}")))
}

/// Regenerates the board a harness transcript was played on.
pub fn regenerate_host(t: &Transcript) -> Result<Arc<Graph>> {
    let params = transcript_params(t)?;
    build_host(params.game, params.n, params.p, t.header.seed)
}

/// Replays `t` on `host` by re-simulation: the same strategies are rebuilt
/// from the header and the game is played again; the first differing move
/// is a replay mismatch. The rebuilt board is then judged by the oracle and
/// the verdict compared with the recorded outcome.
pub fn replay(t: &Transcript, host: &Arc<Graph>) -> Result<Replay> {
    let params = transcript_params(t)?;
    if host.edge_count() != t.header.universe || host.n() != params.n {
        return Err(invalid(format!(
            "transcript is for {} vertices / {} edges, host has {} / {}",
            params.n,
            t.header.universe,
            host.n(),
            host.edge_count()
        )));
    }
    let (fresh, _) =
        play_game(params.game, host, params.p, &t.header.config, params.breaker, &params.constants, t.header.seed)?;
    if let Some(index) = t.first_difference(&fresh) {
        let detail = match (t.moves.get(index), fresh.moves.get(index)) {
            (Some(a), Some(b)) => format!("recorded {:?} {:?}, replayed {:?} {:?}", a.side, a.edges, b.side, b.edges),
            (a, b) => format!("recorded {} moves, replayed {} (at {a:?} / {b:?})", t.moves.len(), fresh.moves.len()),
        };
        return Err(Error::ReplayMismatch { index, detail });
    }
    let board = t.rebuild_board()?;
    let verdict = verify_transcript(host, params.game, &board, t);
    let won = t.outcome() == &Outcome::MakerWin;
    if won != verdict.pass || fresh.last != t.last {
        return Err(Error::ReplayMismatch {
            index: t.moves.len(),
            detail: format!("recorded outcome {}, oracle says pass = {}", t.outcome().label(), verdict.pass),
        });
    }
    Ok(Replay { board, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn game_kind_parses_and_prints() {
        for s in ["pm", "pm-bipartite", "ham", "kconn3"] {
            assert_eq!(s.parse::<GameKind>().unwrap().to_string(), s);
        }
        assert_eq!("kconn:4".parse::<GameKind>().unwrap(), GameKind::Kconn(4));
        assert!("kconn".parse::<GameKind>().is_err());
        assert_eq!(serde_json::to_string(&GameKind::Kconn(3)).unwrap(), r#"{"kconn":3}"#);
    }

    #[test]
    fn empty_seed_range_is_rejected() {
        let spec = ExperimentSpec::new(GameKind::Pm, vec![12], SeedRange::new(3, 3));
        assert!(matches!(spec.validate(), Err(Error::InvalidParameter(_))));
        let spec = ExperimentSpec { p: PRule::Explicit(0.0), ..ExperimentSpec::new(GameKind::Pm, vec![12], SeedRange::new(0, 1)) };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn spec_json_defaults() {
        let spec = ExperimentSpec::from_json(r#"{"game": "ham", "n": [20], "seeds": {"start": 0, "end": 2}}"#).unwrap();
        assert_eq!((spec.a, spec.b, spec.threads), (1, 1, 1));
        assert_eq!(spec.breakers, vec![BreakerKind::Random]);
        assert_eq!(spec.p, PRule::LogPower(3.0));
        assert!(ExperimentSpec::from_json(r#"{"game": "ham", "n": [20], "seeds": {"start": 0, "end": 2}, "x": 1}"#).is_err());
    }

    #[test]
    fn small_pm_row() {
        let spec = ExperimentSpec { p: PRule::Explicit(1.0), ..ExperimentSpec::new(GameKind::Pm, vec![12], SeedRange::new(0, 1)) };
        let res = run_experiment(&spec).unwrap();
        assert_eq!(res.rows.len(), 1);
        let row = &res.rows[0];
        assert_eq!(row.outcome, "maker-win");
        assert!(row.maker_moves <= 7);
        assert_eq!(row.slack, row.maker_moves as i64 - 6);
    }
}
