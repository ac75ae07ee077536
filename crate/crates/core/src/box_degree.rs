//! The box game with resets and the degree game built on top of it.
//!
//! In `rBox(m, b)` BoxMaker adds `b` elements to boxes each round and
//! BoxBreaker then empties one box. Maker uses BoxBreaker's side to keep his
//! degree up: every vertex `v ∈ V1` is a box whose elements are Breaker's
//! unanswered edges from `v` into `V2`, and "emptying" the box means Maker
//! claims an edge at `v`.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{Board, Claim, MakerAction, MakerStrategy, Side};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::rng::GameRng;

/// Weights of an `rBox(m, b)` game plus the bound monitor.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxState {
    weights: Vec<u64>,
    b: usize,
    round: usize,
    max_seen: u64,
    violations: usize,
}

impl BoxState {
    pub fn new(m: usize, b: usize) -> Self {
        assert!(m >= 1, "box game needs at least one box");
        BoxState { weights: vec![0; m], b, round: 0, max_seen: 0, violations: 0 }
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn max_seen(&self) -> u64 {
        self.max_seen
    }

    /// Rounds in which some box exceeded [`BoxState::bound`].
    pub fn violations(&self) -> usize {
        self.violations
    }

    /// `b (1 + ln(m + k))` for the current round `k`.
    pub fn bound(&self) -> f64 {
        let m = self.weights.len() as f64;
        self.b as f64 * (1.0 + (m + self.round.max(1) as f64).ln())
    }

    /// One round: BoxMaker adds `placement[i]` elements to box `i` (the
    /// counts must sum to `b`), the bound is checked, then BoxBreaker resets
    /// the heaviest box. Returns the reset index.
    pub fn play_round(&mut self, placement: &[usize]) -> usize {
        debug_assert_eq!(placement.iter().sum::<usize>(), self.b);
        self.round += 1;
        for (w, &add) in self.weights.iter_mut().zip(placement) {
            *w += add as u64;
        }
        let top = *self.weights.iter().max().unwrap();
        self.max_seen = self.max_seen.max(top);
        if top as f64 > self.bound() + 1e-9 {
            self.violations += 1;
        }
        let i = boxbreaker_move(self);
        self.weights[i] = 0;
        i
    }
}

/// The heaviest box, ties to the lowest index.
pub fn boxbreaker_move(s: &BoxState) -> usize {
    let mut best = 0;
    for (i, &w) in s.weights.iter().enumerate() {
        if w > s.weights[best] {
            best = i;
        }
    }
    best
}

/// BoxMaker policies used to stress the reset rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoxMakerPolicy {
    /// Every element onto the currently heaviest box.
    GreedyStack,
    /// Spread over the boxes not yet reset in the current phase, lightest
    /// first; a phase ends when one survivor is left.
    Survivors,
    Random,
}

/// Stateful BoxMaker following a [`BoxMakerPolicy`].
#[derive(Clone, Debug)]
pub struct BoxMaker {
    policy: BoxMakerPolicy,
    alive: Vec<bool>,
}

impl BoxMaker {
    pub fn new(policy: BoxMakerPolicy, m: usize) -> Self {
        BoxMaker { policy, alive: vec![true; m] }
    }

    pub fn placement(&mut self, s: &BoxState, rng: &mut impl Rng) -> Vec<usize> {
        let m = s.weights.len();
        let mut place = vec![0usize; m];
        let mut w: Vec<u64> = s.weights.clone();
        for _ in 0..s.b {
            let i = match self.policy {
                BoxMakerPolicy::GreedyStack => (0..m).max_by_key(|&i| (w[i], std::cmp::Reverse(i))).unwrap(),
                BoxMakerPolicy::Survivors => (0..m)
                    .filter(|&i| self.alive[i])
                    .min_by_key(|&i| (w[i], i))
                    .unwrap_or(0),
                BoxMakerPolicy::Random => rng.gen_range(0..m),
            };
            place[i] += 1;
            w[i] += 1;
        }
        place
    }

    pub fn after_reset(&mut self, i: usize) {
        self.alive[i] = false;
        if self.alive.iter().filter(|&&a| a).count() <= 1 {
            self.alive.iter_mut().for_each(|a| *a = true);
        }
    }
}

/// Maximum weight BoxMaker can force against reset-heaviest within
/// `rounds` rounds, by exhaustive search over all placements.
pub fn exhaustive_box_max(m: usize, b: usize, rounds: usize) -> (u64, usize) {
    fn placements(m: usize, b: usize) -> Vec<Vec<usize>> {
        if m == 1 {
            return vec![vec![b]];
        }
        let mut out = Vec::new();
        for first in 0..=b {
            for mut rest in placements(m - 1, b - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    fn rec(s: &BoxState, left: usize, all: &[Vec<usize>], violations: &mut usize) -> u64 {
        if left == 0 {
            return s.max_seen;
        }
        let mut best = s.max_seen;
        for p in all {
            let mut next = s.clone();
            next.play_round(p);
            *violations += next.violations - s.violations;
            best = best.max(rec(&next, left - 1, all, violations));
        }
        best
    }
    let all = placements(m, b);
    let mut violations = 0;
    let best = rec(&BoxState::new(m, b), rounds, &all, &mut violations);
    (best, violations)
}

/// How the degree game picks among the free edges at the chosen vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgePick {
    LowestId,
    /// Free edge whose far endpoint has the fewest Maker edges (ties to the
    /// lowest id); spreads Maker's degree more evenly.
    LeastLoaded,
}

/// Maker's view of the `(1:b)` degree game `Deg(V1, V2)` on a host graph,
/// optionally restricted to a subset of the edges.
#[derive(Clone, Debug)]
pub struct DegreeGameView {
    host: Arc<Graph>,
    in_v1: Vec<bool>,
    in_v2: Vec<bool>,
    allowed: Option<Arc<Vec<bool>>>,
    weight: Vec<u32>,
    answered: Vec<u32>,
    maker_deg: Vec<u32>,
    breaker_deg: Vec<u32>,
    cursor: Vec<u32>,
    exhausted: Vec<bool>,
    pick: EdgePick,
}

impl DegreeGameView {
    pub fn new(host: Arc<Graph>, v1: &[Vertex], v2: &[Vertex]) -> Self {
        let n = host.n();
        let mut in_v1 = vec![false; n];
        let mut in_v2 = vec![false; n];
        v1.iter().for_each(|&v| in_v1[v] = true);
        v2.iter().for_each(|&v| in_v2[v] = true);
        DegreeGameView {
            host,
            in_v1,
            in_v2,
            allowed: None,
            weight: vec![0; n],
            answered: vec![0; n],
            maker_deg: vec![0; n],
            breaker_deg: vec![0; n],
            cursor: vec![0; n],
            exhausted: vec![false; n],
            pick: EdgePick::LowestId,
        }
    }

    /// Restricts the game to edges with `allowed[e]`.
    pub fn with_allowed(mut self, allowed: Arc<Vec<bool>>) -> Self {
        self.allowed = Some(allowed);
        self
    }

    pub fn with_pick(mut self, pick: EdgePick) -> Self {
        self.pick = pick;
        self
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn in_v1(&self, v: Vertex) -> bool {
        self.in_v1[v]
    }

    pub fn set_v1(&mut self, v: Vertex, member: bool) {
        self.in_v1[v] = member;
    }

    pub fn weight(&self, v: Vertex) -> u32 {
        self.weight[v]
    }

    /// Breaker edges at `v` already answered by a Maker claim at `v`.
    pub fn answered(&self, v: Vertex) -> u32 {
        self.answered[v]
    }

    /// `d_M(v, V2)` within the allowed edges.
    pub fn maker_degree(&self, v: Vertex) -> u32 {
        self.maker_deg[v]
    }

    /// `d_B(v, V2)` within the allowed edges.
    pub fn breaker_degree(&self, v: Vertex) -> u32 {
        self.breaker_deg[v]
    }

    fn counts(&self, e: EdgeId) -> bool {
        self.allowed.as_ref().is_none_or(|a| a[e as usize])
    }

    pub fn observe(&mut self, side: Side, e: EdgeId) {
        if !self.counts(e) {
            return;
        }
        let (u, v) = self.host.endpoints(e);
        for (x, y) in [(u, v), (v, u)] {
            if self.in_v2[y] {
                match side {
                    Side::Maker => self.maker_deg[x] += 1,
                    Side::Breaker => {
                        self.breaker_deg[x] += 1;
                        self.weight[x] += 1;
                    }
                }
            }
        }
    }

    fn free_edge_at(&mut self, v: Vertex, board: &Board) -> Option<EdgeId> {
        let host = Arc::clone(&self.host);
        let inc = host.incident_edges(v);
        let nb = host.neighbors(v);
        match self.pick {
            EdgePick::LowestId => {
                // edges only ever leave the free set, so the cursor is monotone
                let mut c = self.cursor[v] as usize;
                while c < inc.len() {
                    let e = inc[c];
                    if board.is_free(e) && self.in_v2[nb[c] as usize] && self.counts(e) {
                        break;
                    }
                    c += 1;
                }
                self.cursor[v] = c as u32;
                (c < inc.len()).then(|| inc[c])
            }
            EdgePick::LeastLoaded => inc
                .iter()
                .zip(nb)
                .filter(|&(&e, &w)| board.is_free(e) && self.in_v2[w as usize] && self.counts(e))
                .min_by_key(|&(&e, &w)| (self.maker_deg[w as usize], e))
                .map(|(&e, _)| e),
        }
    }

    /// Selects `v ∈ V1` of maximum weight that still has a free edge into
    /// `V2` (ties to the lowest index), resets its weight and returns the
    /// edge to claim. `None` is the pass signal.
    pub fn next_claim(&mut self, board: &Board) -> Option<(EdgeId, Vertex)> {
        self.claim_with_weight_at_least(board, 0)
    }

    /// Like [`next_claim`](Self::next_claim) but only considers vertices
    /// whose weight is positive.
    pub fn next_weighted_claim(&mut self, board: &Board) -> Option<(EdgeId, Vertex)> {
        self.claim_with_weight_at_least(board, 1)
    }

    /// Like [`next_claim`](Self::next_claim) but only answers vertices whose
    /// pending weight is at least `min`.
    pub fn claim_with_weight_at_least(&mut self, board: &Board, min: u32) -> Option<(EdgeId, Vertex)> {
        loop {
            let mut best: Option<Vertex> = None;
            for v in 0..self.host.n() {
                if self.in_v1[v]
                    && !self.exhausted[v]
                    && self.weight[v] >= min
                    && best.is_none_or(|b| self.weight[v] > self.weight[b])
                {
                    best = Some(v);
                }
            }
            let v = best?;
            match self.free_edge_at(v, board) {
                Some(e) => {
                    self.answered[v] += self.weight[v];
                    self.weight[v] = 0;
                    return Some((e, v));
                }
                // no free edge into V2 ever again
                None => self.exhausted[v] = true,
            }
        }
    }

    /// First `v ∈ V1` violating `d_B(v,V2) <= 4 b ln n (d_M(v,V2) + 1)`.
    pub fn bound_violation(&self, b: usize) -> Option<Vertex> {
        let factor = 4.0 * b as f64 * (self.host.n().max(2) as f64).ln();
        (0..self.host.n()).find(|&v| {
            self.in_v1[v] && self.breaker_deg[v] as f64 > factor * (self.maker_deg[v] as f64 + 1.0)
        })
    }

    /// Ledger identity: every Breaker edge at `v` is either pending or answered.
    pub fn ledger_holds(&self) -> bool {
        (0..self.host.n()).all(|v| self.breaker_deg[v] == self.weight[v] + self.answered[v])
    }
}

/// Maker playing nothing but the degree game; declares done once no vertex
/// of `V1` has a free edge into `V2`.
#[derive(Clone, Debug)]
pub struct DegreeGameMaker {
    view: DegreeGameView,
}

impl DegreeGameMaker {
    pub fn new(view: DegreeGameView) -> Self {
        DegreeGameMaker { view }
    }

    pub fn view(&self) -> &DegreeGameView {
        &self.view
    }
}

impl MakerStrategy for DegreeGameMaker {
    fn name(&self) -> String {
        "degree-game".into()
    }

    fn observe(&mut self, side: Side, e: EdgeId) {
        self.view.observe(side, e);
    }

    fn next_move(&mut self, board: &Board, _rng: &mut GameRng) -> MakerAction {
        match self.view.next_claim(board) {
            Some((e, _)) => MakerAction::Claim(Claim::new(e, "degree")),
            None => MakerAction::Done,
        }
    }
}

/// Free-function form of [`DegreeGameView::next_claim`].
pub fn degree_game_move(view: &mut DegreeGameView, board: &Board) -> Option<(EdgeId, Vertex)> {
    view.next_claim(board)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from;

    #[test]
    fn heaviest_box_with_low_tie() {
        let mut s = BoxState::new(3, 1);
        s.weights = vec![0, 5, 2];
        assert_eq!(boxbreaker_move(&s), 1);
        assert_eq!(boxbreaker_move(&BoxState::new(3, 1)), 0);
    }

    #[test]
    fn stacking_stays_under_bound() {
        let mut rng = rng_from(1, 0);
        for policy in [BoxMakerPolicy::GreedyStack, BoxMakerPolicy::Survivors, BoxMakerPolicy::Random] {
            let mut s = BoxState::new(4, 2);
            let mut bm = BoxMaker::new(policy, 4);
            for _ in 0..50 {
                let p = bm.placement(&s, &mut rng);
                let i = s.play_round(&p);
                bm.after_reset(i);
            }
            assert_eq!(s.violations(), 0, "{policy:?}");
            assert!((s.max_seen() as f64) <= 2.0 * (1.0 + 54f64.ln()));
        }
    }

    #[test]
    fn exhaustive_small_box_game() {
        let (best, violations) = exhaustive_box_max(3, 1, 6);
        assert_eq!(violations, 0);
        assert!(best >= 1);
    }

    #[test]
    fn degree_game_answers_the_attacked_vertex() {
        // star at 0 with leaves 1..=5 plus the edge (1,2)
        let host = Arc::new(Graph::from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2)]).unwrap());
        let mut view = DegreeGameView::new(host.clone(), &[0], &[1, 2, 3, 4, 5]);
        let mut board = Board::new(host.edge_count());
        for e in [0, 1] {
            board.claim(e, Side::Breaker).unwrap();
            view.observe(Side::Breaker, e);
        }
        assert_eq!(view.weight(0), 2);
        let (e, v) = degree_game_move(&mut view, &board).unwrap();
        assert_eq!((e, v), (2, 0));
        assert_eq!(view.weight(0), 0);
        assert!(view.ledger_holds());
    }

    #[test]
    fn pass_when_nothing_free() {
        let host = Arc::new(Graph::path(3));
        let mut view = DegreeGameView::new(host.clone(), &[0, 1, 2], &[0, 1, 2]);
        let mut board = Board::new(2);
        for e in 0..2 {
            board.claim(e, Side::Maker).unwrap();
            view.observe(Side::Maker, e);
        }
        assert!(degree_game_move(&mut view, &board).is_none());
    }
}
