//! Hamiltonicity in `n + o(n)` moves: a matching, merged into a few long
//! paths, connected near their ends into one long path, and closed into a
//! Hamilton cycle through the leftover vertices.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::consts::{StrategyConstants, Thresholds};
use super::expander::{BuildGoal, ExpanderPlan, PlanStep};
use super::paths::PathStage;
use super::stage1::{pick_reserve, reserve_size, stage1_target, Cadence, MatchingStage, StageStep};
use super::window::{WindowReport, WindowStage};
use crate::engine::{Board, Certificate, Claim, MakerAction, MakerStrategy, Side};
use crate::error::{invalid, Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::rng::GameRng;

enum Stage {
    Setup,
    One(MatchingStage),
    Two(PathStage),
    Three(Box<WindowStage>),
    Four { path: Vec<Vertex>, plan: Box<ExpanderPlan> },
    Done,
}

/// Stage sizes of one run, for transcripts and audits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HamReport {
    pub u0: usize,
    pub matching: usize,
    pub paths: usize,
    pub retired: usize,
    /// Paths longer than twice the retirement length when merging stopped.
    pub overlong: usize,
    pub window: WindowReport,
    pub long_path: usize,
    pub residual: usize,
}

pub struct HamStrategy {
    host: Arc<Graph>,
    b: usize,
    consts: StrategyConstants,
    th: Thresholds,
    stage: Stage,
    cadence: Option<Cadence>,
    cycle: Vec<Vertex>,
    long_min: usize,
    longest: Vec<Vertex>,
    notes: BTreeMap<&'static str, usize>,
    report: HamReport,
}

/// Maker strategy for the Hamiltonicity game on `g` against bias `b`.
pub fn ham_strategy(g: Arc<Graph>, b: usize, consts: &StrategyConstants) -> Result<HamStrategy> {
    consts.validate()?;
    if b == 0 {
        return Err(invalid("Breaker bias must be positive"));
    }
    if g.n() < 3 {
        return Err(invalid(format!("a Hamilton cycle needs at least 3 vertices, got {}", g.n())));
    }
    let th = consts.ham_thresholds(g.n());
    Ok(HamStrategy {
        host: g,
        b,
        consts: consts.clone(),
        th,
        stage: Stage::Setup,
        cadence: None,
        cycle: Vec::new(),
        long_min: 0,
        longest: Vec::new(),
        notes: BTreeMap::new(),
        report: HamReport::default(),
    })
}

impl HamStrategy {
    pub fn thresholds(&self) -> &Thresholds {
        &self.th
    }

    pub fn stage_moves(&self) -> &BTreeMap<&'static str, usize> {
        &self.notes
    }

    pub fn report(&self) -> &HamReport {
        &self.report
    }

    pub fn plan(&self) -> Option<&ExpanderPlan> {
        match &self.stage {
            Stage::Four { plan, .. } => Some(plan),
            _ => None,
        }
    }

    fn setup(&mut self, board: &Board, rng: &mut GameRng) -> Result<()> {
        let g = &self.host;
        if let Some(v) = (0..g.n()).find(|&v| g.incident_edges(v).iter().filter(|&&e| !board.is_breaker(e)).count() < 2) {
            return Err(Error::Setup(format!("vertex {v} has fewer than two available edges")));
        }
        let size = reserve_size(g, &self.th, &self.consts, None);
        let u0 = pick_reserve(g, size, None, &self.consts, rng)?;
        self.report.u0 = u0.len();
        self.cadence = Some(Cadence::new(Arc::clone(g), &u0, board, &self.th, &self.consts));
        let mut matching = MatchingStage::new(Arc::clone(g), &u0, stage1_target(g.n(), size, &self.th));
        for e in board.maker_edges() {
            matching.observe(Side::Maker, e);
        }
        self.stage = Stage::One(matching);
        Ok(())
    }

    fn start_four(&mut self, path: Vec<Vertex>, board: &Board, rng: &mut GameRng) -> Result<()> {
        let n = self.host.n();
        let (x, y) = (path[0], path[path.len() - 1]);
        let mut on_path = vec![false; n];
        path.iter().for_each(|&v| on_path[v] = true);
        let vh: Vec<Vertex> = (0..n).filter(|&v| !on_path[v] || v == x || v == y).collect();
        self.report.long_path = path.len();
        self.report.residual = vh.len();
        let plan = ExpanderPlan::new(Arc::clone(&self.host), vh, BuildGoal::HamPath { x, y }, board, self.b, &self.consts, rng)?;
        self.cadence = None;
        self.stage = Stage::Four { path, plan: Box::new(plan) };
        Ok(())
    }

    fn claim(&mut self, e: EdgeId, note: &'static str) -> MakerAction {
        *self.notes.entry(note).or_default() += 1;
        MakerAction::Claim(Claim::new(e, note))
    }

    fn step(&mut self, board: &Board, rng: &mut GameRng) -> Result<MakerAction> {
        loop {
            if matches!(self.stage, Stage::One(_) | Stage::Two(_) | Stage::Three(_)) {
                if let Some(e) = self.cadence.as_mut().and_then(|c| c.tick(board)) {
                    return Ok(self.claim(e, "degree"));
                }
            }
            match &mut self.stage {
                Stage::Setup => self.setup(board, rng)?,
                Stage::One(matching) => match matching.next(board) {
                    StageStep::Claim(e) => return Ok(self.claim(e, "stage-1")),
                    StageStep::Stuck(reason) => return Ok(MakerAction::Forfeit(reason)),
                    StageStep::Complete => {
                        let m0 = matching.matching().to_vec();
                        self.report.matching = m0.len();
                        self.long_min = (2 * m0.len()).saturating_sub(self.th.long_path_slack);
                        let paths = PathStage::new(Arc::clone(&self.host), &m0, self.th.m1_target, self.th.retire_len);
                        self.stage = Stage::Two(paths);
                    }
                },
                Stage::Two(paths) => match paths.next(board) {
                    StageStep::Claim(e) => return Ok(self.claim(e, "stage-2")),
                    // a stuck merge leaves more paths than planned; the window
                    // game connects those too, and the length check below
                    // still guards the result
                    StageStep::Complete | StageStep::Stuck(_) => {
                        let list = paths.paths();
                        self.longest = list.iter().max_by_key(|p| p.len()).cloned().unwrap_or_default();
                        self.report.paths = list.len();
                        self.report.retired = paths.retired();
                        self.report.overlong = list.iter().filter(|p| p.len() > 2 * self.th.retire_len).count();
                        let ws = WindowStage::new(
                            Arc::clone(&self.host),
                            list,
                            board,
                            self.b,
                            &self.th,
                            &self.consts,
                            self.long_min,
                            rng,
                        );
                        self.stage = Stage::Three(Box::new(ws));
                    }
                },
                Stage::Three(ws) => {
                    if let Some(e) = ws.next(board, rng) {
                        return Ok(self.claim(e, "stage-3"));
                    }
                    let mut path = ws.splice();
                    if path.len() < 2 {
                        // tiny boards discard every path; keep the longest one
                        path = std::mem::take(&mut self.longest);
                    }
                    let mut report = ws.report().clone();
                    report.virtual_claims = ws.virtual_claims();
                    self.report.window = report;
                    if path.len() < self.long_min || path.len() < 2 {
                        return Ok(MakerAction::Forfeit(format!(
                            "stage-3-short: spliced path has {} vertices, need {}",
                            path.len(),
                            self.long_min
                        )));
                    }
                    self.start_four(path, board, rng)?;
                }
                Stage::Four { path, plan } => match plan.next(board) {
                    PlanStep::Claim(e, note) => return Ok(self.claim(e, note)),
                    PlanStep::Stuck(reason) => return Ok(MakerAction::Forfeit(format!("stage-4-no-path: {reason}"))),
                    PlanStep::Complete => {
                        let closing = plan.path();
                        let mut cycle = std::mem::take(path);
                        if closing.len() > 2 {
                            cycle.extend(closing[1..closing.len() - 1].iter().rev());
                        }
                        self.cycle = cycle;
                        self.stage = Stage::Done;
                    }
                },
                Stage::Done => return Ok(MakerAction::Done),
            }
        }
    }
}

impl MakerStrategy for HamStrategy {
    fn name(&self) -> String {
        "ham".into()
    }

    fn observe(&mut self, side: Side, e: EdgeId) {
        if let Some(c) = self.cadence.as_mut() {
            c.observe(side, e);
        }
        match &mut self.stage {
            Stage::One(m) => m.observe(side, e),
            Stage::Two(p) => p.observe(side, e),
            Stage::Three(w) => w.observe(side, e),
            Stage::Four { plan, .. } => plan.observe(side, e),
            Stage::Setup | Stage::Done => {}
        }
    }

    fn next_move(&mut self, board: &Board, rng: &mut GameRng) -> MakerAction {
        self.step(board, rng).unwrap_or_else(|err| MakerAction::Forfeit(format!("setup: {err}")))
    }

    fn certificate(&self) -> Option<Certificate> {
        matches!(self.stage, Stage::Done).then(|| Certificate::HamiltonCycle { cycle: self.cycle.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::breakers::RandomBreaker;
    use crate::engine::{play, GameConfig, GraphGoal, GraphObjective, Outcome};

    fn run(g: Graph, seed: u64) -> (Outcome, usize) {
        let g = Arc::new(g);
        let mut maker = ham_strategy(Arc::clone(&g), 1, &StrategyConstants::default()).unwrap();
        let mut obj = GraphObjective::new(Arc::clone(&g), GraphGoal::HamiltonCycle);
        let (t, _) =
            play(g.edge_count(), &GameConfig::new(1, 1), &mut maker, &mut RandomBreaker, &mut obj, seed).unwrap();
        (t.outcome().clone(), t.last.maker_moves)
    }

    #[test]
    fn wins_on_complete_graphs() {
        for n in [12, 20, 40] {
            for seed in 0..3 {
                let (o, moves) = run(Graph::complete(n), seed);
                assert_eq!(o, Outcome::MakerWin, "n {n} seed {seed}");
                assert!(moves <= 2 * n, "n {n}: {moves}");
            }
        }
    }

    #[test]
    fn degree_one_vertex_is_a_setup_forfeit() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        assert!(matches!(run(g, 0).0, Outcome::Forfeit { side: Side::Maker, .. }));
    }
}
