//! Pieces shared by the matching and Hamiltonicity strategies: the reserve
//! set `U_0`, the interleaved degree game toward it, and the greedy matching
//! stage.

use std::sync::Arc;

use rand::seq::index::sample;

use super::consts::{StrategyConstants, Thresholds};
use crate::box_degree::DegreeGameView;
use crate::engine::{Board, Side};
use crate::error::{invalid, Error, Result};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::rng::GameRng;

/// Samples a reserve set of `round(fraction * n)` vertices such that every
/// vertex has at least `max(1, floor(c1 |U_0| p))` neighbours in it, where
/// `p` is the edge density. Resamples up to `u0_attempts` times.
pub fn pick_u0(g: &Graph, fraction: f64, consts: &StrategyConstants, rng: &mut GameRng) -> Result<Vec<Vertex>> {
    let size = (fraction * g.n() as f64).round() as usize;
    if size < 1 || size > g.n() {
        return Err(invalid(format!("reserve fraction {fraction} gives {size} of {} vertices", g.n())));
    }
    pick_reserve(g, size, None, consts, rng)
}

/// Bipartite form: `size / 2` reserve vertices on each side of a graph whose
/// left side is `0..half`.
pub fn pick_u0_bipartite(
    g: &Graph,
    half: usize,
    fraction: f64,
    consts: &StrategyConstants,
    rng: &mut GameRng,
) -> Result<Vec<Vertex>> {
    let size = (fraction * g.n() as f64).round() as usize;
    if size < 2 || 2 * half != g.n() {
        return Err(invalid(format!("reserve fraction {fraction} too small for {} vertices", g.n())));
    }
    pick_reserve(g, size, Some(half), consts, rng)
}

/// Reserve size on a board: the threshold size, enlarged so that the
/// expected number of reserve neighbours reaches `u0_cover * ln n`, and
/// capped at a quarter of the vertices. Bipartite boards reserve this many
/// on each side.
pub(crate) fn reserve_size(g: &Graph, th: &Thresholds, consts: &StrategyConstants, half: Option<usize>) -> usize {
    let n = g.n();
    let density = match half {
        Some(h) => g.edge_count() as f64 / (h * h).max(1) as f64,
        None => 2.0 * g.edge_count() as f64 / (n * n.saturating_sub(1)).max(1) as f64,
    };
    let cover = if density > 0.0 { (consts.u0_cover * (n.max(3) as f64).ln() / density).ceil() as usize } else { 0 };
    let side = th.u0_size.max(cover).min((n / 4).max(1));
    if half.is_some() { 2 * side } else { side }
}

/// Stage I matching size that leaves the reserve plus `leftover` spare
/// vertices unmatched.
pub(crate) fn stage1_target(n: usize, reserve: usize, th: &Thresholds) -> usize {
    let leftover = n - 2 * th.stage1_matching - th.u0_size;
    n.saturating_sub(reserve + leftover) / 2
}

pub(crate) fn pick_reserve(
    g: &Graph,
    size: usize,
    half: Option<usize>,
    consts: &StrategyConstants,
    rng: &mut GameRng,
) -> Result<Vec<Vertex>> {
    let n = g.n();
    let (density, per_side) = match half {
        Some(h) => (g.edge_count() as f64 / (h * h).max(1) as f64, (size / 2).max(1)),
        None => (2.0 * g.edge_count() as f64 / (n * n.saturating_sub(1)).max(1) as f64, size),
    };
    let threshold = ((consts.c1 * per_side as f64 * density).floor() as usize).max(1);
    let mut mark = vec![false; n];
    for _ in 0..consts.u0_attempts {
        let set: Vec<Vertex> = match half {
            Some(h) => {
                let mut s: Vec<Vertex> = sample(rng, h, per_side.min(h)).into_iter().collect();
                s.extend(sample(rng, h, per_side.min(h)).into_iter().map(|v| v + h));
                s
            }
            None => sample(rng, n, size).into_vec(),
        };
        set.iter().for_each(|&v| mark[v] = true);
        let ok = (0..n).all(|v| g.neighbors(v).iter().filter(|&&w| mark[w as usize]).count() >= threshold);
        set.iter().for_each(|&v| mark[v] = false);
        if ok {
            let mut set = set;
            set.sort_unstable();
            return Ok(set);
        }
    }
    Err(Error::Setup(format!(
        "no reserve set of size {size} with cross-degree >= {threshold} in {} attempts",
        consts.u0_attempts
    )))
}

/// The interleaved degree game `Deg(V, U_0)`: every `every`-th Maker move
/// answers the vertex with the heaviest pending Breaker weight toward
/// `U_0`, provided that weight reached `lazy`.
pub(crate) struct Cadence {
    view: DegreeGameView,
    every: usize,
    lazy: u32,
    moves: usize,
}

impl Cadence {
    pub(crate) fn new(host: Arc<Graph>, u0: &[Vertex], board: &Board, th: &Thresholds, consts: &StrategyConstants) -> Self {
        let all: Vec<Vertex> = (0..host.n()).collect();
        let mut view = DegreeGameView::new(host, &all, u0).with_pick(consts.pick);
        for e in board.maker_edges() {
            view.observe(Side::Maker, e);
        }
        for e in board.breaker_edges() {
            view.observe(Side::Breaker, e);
        }
        Cadence { view, every: th.cadence, lazy: th.lazy_weight, moves: 0 }
    }

    pub(crate) fn observe(&mut self, side: Side, e: EdgeId) {
        self.view.observe(side, e);
    }

    /// Counts one Maker move; on cadence rounds returns the degree-game
    /// claim, if any vertex is heavy enough.
    pub(crate) fn tick(&mut self, board: &Board) -> Option<EdgeId> {
        self.moves += 1;
        if self.moves % self.every != 0 {
            return None;
        }
        let (e, _) = self.view.claim_with_weight_at_least(board, self.lazy)?;
        Some(e)
    }
}

pub(crate) enum StageStep {
    Claim(EdgeId),
    Complete,
    Stuck(String),
}

/// Greedy matching `M_0` avoiding `U_0`, always taking the lowest-id
/// eligible edge.
pub(crate) struct MatchingStage {
    host: Arc<Graph>,
    reserved: Vec<bool>,
    matched: Vec<bool>,
    m0: Vec<(Vertex, Vertex)>,
    cursor: usize,
    target: usize,
    pending: Option<EdgeId>,
}

impl MatchingStage {
    pub(crate) fn new(host: Arc<Graph>, u0: &[Vertex], target: usize) -> Self {
        let n = host.n();
        let mut reserved = vec![false; n];
        u0.iter().for_each(|&v| reserved[v] = true);
        MatchingStage { host, reserved, matched: vec![false; n], m0: Vec::new(), cursor: 0, target, pending: None }
    }

    pub(crate) fn matching(&self) -> &[(Vertex, Vertex)] {
        &self.m0
    }

    pub(crate) fn observe(&mut self, side: Side, e: EdgeId) {
        if side == Side::Maker && self.pending == Some(e) {
            self.pending = None;
            let (u, v) = self.host.endpoints(e);
            assert!(!self.matched[u] && !self.matched[v], "M_0 must stay a matching");
            assert!(!self.reserved[u] && !self.reserved[v], "M_0 must avoid U_0");
            self.matched[u] = true;
            self.matched[v] = true;
            self.m0.push((u, v));
        }
    }

    pub(crate) fn next(&mut self, board: &Board) -> StageStep {
        if self.m0.len() >= self.target {
            return StageStep::Complete;
        }
        let n = self.host.n();
        while self.cursor < n {
            let u = self.cursor;
            if !self.matched[u] && !self.reserved[u] {
                let found = self.host.incident(u).find(|&(w, e)| {
                    w > u && !self.matched[w] && !self.reserved[w] && board.is_free(e)
                });
                if let Some((_, e)) = found {
                    self.pending = Some(e);
                    return StageStep::Claim(e);
                }
            }
            // no eligible edge at u now means none later either
            self.cursor += 1;
        }
        let open = (0..n).filter(|&v| !self.matched[v] && !self.reserved[v]).count();
        if open <= 1 {
            StageStep::Complete
        } else {
            StageStep::Stuck(format!("stage-1-stuck: {open} unmatched vertices without a free edge"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from;

    #[test]
    fn reserve_on_complete_and_empty_graphs() {
        let c = StrategyConstants::default();
        let mut rng = rng_from(0, 2);
        let u0 = pick_u0(&Graph::complete(20), 0.1, &c, &mut rng).unwrap();
        assert_eq!(u0.len(), 2);
        assert!(matches!(pick_u0(&Graph::empty(20), 0.1, &c, &mut rng), Err(Error::Setup(_))));
        assert!(matches!(pick_u0(&Graph::complete(5), 0.01, &c, &mut rng), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn bipartite_reserve_is_balanced() {
        let bg = crate::graph::BipartiteGraph::complete(10);
        let u0 = pick_u0_bipartite(bg.graph(), 10, 0.2, &StrategyConstants::default(), &mut rng_from(1, 2)).unwrap();
        assert_eq!(u0.iter().filter(|&&v| v < 10).count(), 2);
        assert_eq!(u0.len(), 4);
    }

    #[test]
    fn greedy_takes_lowest_edge() {
        let host = Arc::new(Graph::complete(10));
        let board = Board::new(host.edge_count());
        let mut st = MatchingStage::new(Arc::clone(&host), &[9], 4);
        match st.next(&board) {
            StageStep::Claim(e) => assert_eq!(host.endpoints(e), (0, 1)),
            _ => panic!("expected a claim"),
        }
    }

    #[test]
    fn complete_when_everything_matched() {
        let host = Arc::new(Graph::complete(6));
        let mut board = Board::new(host.edge_count());
        let mut st = MatchingStage::new(Arc::clone(&host), &[5], 10);
        for _ in 0..2 {
            let StageStep::Claim(e) = st.next(&board) else { panic!() };
            board.claim(e, Side::Maker).unwrap();
            st.observe(Side::Maker, e);
        }
        assert!(matches!(st.next(&board), StageStep::Complete));
        assert_eq!(st.matching(), &[(0, 1), (2, 3)]);
    }
}
