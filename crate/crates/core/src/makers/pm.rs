//! Perfect matching in `n/2 + o(n)` moves: a reserve `U_0`, a greedy
//! matching avoiding it, then the expander builder on what is left.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::augment::Augmenter;
use super::consts::{StrategyConstants, Thresholds};
use super::expander::{BuildGoal, ExpanderPlan, PlanStep};
use super::stage1::{pick_reserve, reserve_size, stage1_target, Cadence, MatchingStage, StageStep};
use crate::engine::{Board, Certificate, Claim, MakerAction, MakerStrategy, Side};
use crate::error::{invalid, Result};
use crate::graph::{BipartiteGraph, EdgeId, Graph, Vertex};
use crate::oracles::max_matching;
use crate::rng::GameRng;

enum Stage {
    Setup,
    One { cadence: Cadence, matching: MatchingStage },
    Two { m0: Vec<(Vertex, Vertex)>, plan: Box<ExpanderPlan> },
    Repair(Augmenter, String),
    Done,
}

pub struct PmStrategy {
    host: Arc<Graph>,
    half: Option<usize>,
    b: usize,
    consts: StrategyConstants,
    th: Thresholds,
    stage: Stage,
    u0: Vec<Vertex>,
    pairs: Vec<(Vertex, Vertex)>,
    notes: BTreeMap<&'static str, usize>,
}

/// Maker strategy for the perfect matching game on `g` against bias `b`.
pub fn pm_strategy(g: Arc<Graph>, b: usize, consts: &StrategyConstants) -> Result<PmStrategy> {
    PmStrategy::build(g, None, b, consts)
}

/// Maker strategy for the perfect matching game on a balanced bipartite
/// board.
pub fn pm_bipartite_strategy(g: &BipartiteGraph, b: usize, consts: &StrategyConstants) -> Result<PmStrategy> {
    PmStrategy::build(Arc::new(g.graph().clone()), Some(g.half()), b, consts)
}

impl PmStrategy {
    fn build(host: Arc<Graph>, half: Option<usize>, b: usize, consts: &StrategyConstants) -> Result<Self> {
        consts.validate()?;
        if b == 0 {
            return Err(invalid("Breaker bias must be positive"));
        }
        let th = consts.pm_thresholds(host.n());
        Ok(PmStrategy {
            host,
            half,
            b,
            consts: consts.clone(),
            th,
            stage: Stage::Setup,
            u0: Vec::new(),
            pairs: Vec::new(),
            notes: BTreeMap::new(),
        })
    }

    pub fn thresholds(&self) -> &Thresholds {
        &self.th
    }

    pub fn u0(&self) -> &[Vertex] {
        &self.u0
    }

    /// Claims per stage note so far.
    pub fn stage_moves(&self) -> &BTreeMap<&'static str, usize> {
        &self.notes
    }

    pub fn plan(&self) -> Option<&ExpanderPlan> {
        match &self.stage {
            Stage::Two { plan, .. } => Some(plan),
            _ => None,
        }
    }

    fn setup(&mut self, board: &Board, rng: &mut GameRng) -> Result<()> {
        let g = &self.host;
        if let Some(v) = (0..g.n()).find(|&v| g.incident_edges(v).iter().all(|&e| board.is_breaker(e))) {
            return Err(crate::error::Error::Setup(format!("vertex {v} has no available edge")));
        }
        let size = reserve_size(g, &self.th, &self.consts, self.half);
        self.u0 = pick_reserve(g, size, self.half, &self.consts, rng)?;
        let target = stage1_target(g.n(), size, &self.th);
        let cadence = Cadence::new(Arc::clone(g), &self.u0, board, &self.th, &self.consts);
        let mut matching = MatchingStage::new(Arc::clone(g), &self.u0, target);
        for e in board.maker_edges() {
            matching.observe(Side::Maker, e);
        }
        self.stage = Stage::One { cadence, matching };
        Ok(())
    }

    fn start_two(&mut self, m0: Vec<(Vertex, Vertex)>, board: &Board, rng: &mut GameRng) -> Result<()> {
        let mut covered = vec![false; self.host.n()];
        for &(u, v) in &m0 {
            covered[u] = true;
            covered[v] = true;
        }
        let vh: Vec<Vertex> = (0..self.host.n()).filter(|&v| !covered[v]).collect();
        let goal = match self.half {
            Some(half) => BuildGoal::BipartiteMatching { half },
            None => BuildGoal::PerfectMatching,
        };
        let plan = ExpanderPlan::new(Arc::clone(&self.host), vh, goal, board, self.b, &self.consts, rng)?;
        self.stage = Stage::Two { m0, plan: Box::new(plan) };
        Ok(())
    }

    fn claim(&mut self, e: EdgeId, note: &'static str) -> MakerAction {
        *self.notes.entry(note).or_default() += 1;
        MakerAction::Claim(Claim::new(e, note))
    }

    fn step(&mut self, board: &Board, rng: &mut GameRng) -> Result<MakerAction> {
        loop {
            match &mut self.stage {
                Stage::Setup => self.setup(board, rng)?,
                Stage::One { cadence, matching } => {
                    if let Some(e) = cadence.tick(board) {
                        return Ok(self.claim(e, "degree"));
                    }
                    match matching.next(board) {
                        StageStep::Claim(e) => return Ok(self.claim(e, "stage-1")),
                        StageStep::Stuck(reason) => {
                            let pairs = matching.matching().to_vec();
                            self.stage = Stage::Repair(Augmenter::new(self.host.n(), None, &pairs), reason);
                        }
                        StageStep::Complete => {
                            let m0 = matching.matching().to_vec();
                            self.start_two(m0, board, rng)?;
                        }
                    }
                }
                Stage::Two { m0, plan } => match plan.next(board) {
                    PlanStep::Claim(e, note) => return Ok(self.claim(e, note)),
                    PlanStep::Stuck(reason) => {
                        let vh = plan.vh();
                        let mut pairs = std::mem::take(m0);
                        pairs.extend(max_matching(&plan.maker_graph()).into_iter().map(|(u, v)| (vh[u], vh[v])));
                        self.stage = Stage::Repair(Augmenter::new(self.host.n(), None, &pairs), reason);
                    }
                    PlanStep::Complete => {
                        let mut pairs = std::mem::take(m0);
                        pairs.extend_from_slice(plan.matching());
                        self.pairs = pairs;
                        self.stage = Stage::Done;
                    }
                },
                Stage::Repair(repair, reason) => match repair.next(&self.host, board) {
                    StageStep::Claim(e) => return Ok(self.claim(e, "repair")),
                    StageStep::Stuck(_) => return Ok(MakerAction::Forfeit(format!("{reason}; no augmenting path"))),
                    StageStep::Complete => {
                        self.pairs = repair.pairs();
                        self.stage = Stage::Done;
                    }
                },
                Stage::Done => return Ok(MakerAction::Done),
            }
        }
    }
}

impl MakerStrategy for PmStrategy {
    fn name(&self) -> String {
        if self.half.is_some() { "pm-bipartite".into() } else { "pm".into() }
    }

    fn observe(&mut self, side: Side, e: EdgeId) {
        match &mut self.stage {
            Stage::One { cadence, matching } => {
                cadence.observe(side, e);
                matching.observe(side, e);
            }
            Stage::Two { plan, .. } => plan.observe(side, e),
            Stage::Setup | Stage::Repair(..) | Stage::Done => {}
        }
    }

    fn next_move(&mut self, board: &Board, rng: &mut GameRng) -> MakerAction {
        self.step(board, rng).unwrap_or_else(|err| MakerAction::Forfeit(format!("setup: {err}")))
    }

    fn certificate(&self) -> Option<Certificate> {
        matches!(self.stage, Stage::Done).then(|| Certificate::Matching { pairs: self.pairs.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::breakers::RandomBreaker;
    use crate::engine::{play, GameConfig, GraphGoal, GraphObjective, Outcome};

    fn run(g: Graph, half: Option<usize>, seed: u64) -> (Outcome, usize) {
        let g = Arc::new(g);
        let c = StrategyConstants::default();
        let mut maker = match half {
            Some(h) => pm_bipartite_strategy(&BipartiteGraph::new((*g).clone(), h).unwrap(), 1, &c).unwrap(),
            None => pm_strategy(Arc::clone(&g), 1, &c).unwrap(),
        };
        let mut obj = GraphObjective::new(Arc::clone(&g), GraphGoal::PerfectMatching);
        let (t, _) =
            play(g.edge_count(), &GameConfig::new(1, 1), &mut maker, &mut RandomBreaker, &mut obj, seed).unwrap();
        (t.outcome().clone(), t.last.maker_moves)
    }

    #[test]
    fn wins_on_small_complete_graphs() {
        for seed in 0..5 {
            let (o, moves) = run(Graph::complete(12), None, seed);
            assert_eq!(o, Outcome::MakerWin, "seed {seed}");
            assert!(moves <= 7, "seed {seed}: {moves}");
            assert_eq!(run(Graph::complete(11), None, seed).0, Outcome::MakerWin);
        }
    }

    #[test]
    fn wins_on_complete_bipartite() {
        for seed in 0..5 {
            let bg = BipartiteGraph::complete(6);
            assert_eq!(run(bg.into_graph(), Some(6), seed).0, Outcome::MakerWin, "seed {seed}");
        }
    }

    #[test]
    fn isolated_vertex_is_a_setup_forfeit() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        match run(g, None, 0).0 {
            Outcome::Forfeit { side: Side::Maker, reason } => assert!(reason.starts_with("setup")),
            other => panic!("{other:?}"),
        }
    }
}
