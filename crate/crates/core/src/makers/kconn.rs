//! k-connectivity in `kn/2 + o(n)` moves: a random partition into `k - 1`
//! equal parts and a remainder `W`, a Hamiltonicity game inside every part,
//! a bipartite matching game between every two parts, and a star of `k`
//! edges at every vertex of `W`, all multiplexed round-robin.

use std::sync::Arc;

use rand::seq::SliceRandom;

use super::consts::StrategyConstants;
use super::ham::ham_strategy;
use super::pm::pm_bipartite_strategy;
use crate::engine::{Board, Certificate, Claim, FakeMoves, MakerAction, MakerStrategy, MultiBoard, Side, SubBoard};
use crate::error::{invalid, Result};
use crate::graph::{BipartiteGraph, EdgeId, Graph, Vertex};
use crate::rng::{derive_seed, rng_from, stream, GameRng};

/// Claims `k` edges of a star, lowest id first.
pub struct StarStrategy {
    k: usize,
    owned: usize,
}

impl StarStrategy {
    pub fn new(k: usize) -> Self {
        StarStrategy { k, owned: 0 }
    }
}

impl MakerStrategy for StarStrategy {
    fn name(&self) -> String {
        format!("star({})", self.k)
    }

    fn observe(&mut self, side: Side, _e: EdgeId) {
        if side == Side::Maker {
            self.owned += 1;
        }
    }

    fn next_move(&mut self, board: &Board, _rng: &mut GameRng) -> MakerAction {
        if self.owned >= self.k {
            return MakerAction::Done;
        }
        match board.free_edges().iter().min() {
            Some(&e) => MakerAction::Claim(Claim::new(e, "star")),
            None => MakerAction::Forfeit(format!("star-stuck: {} of {} edges", self.owned, self.k)),
        }
    }
}

/// The vertex partition `V_1, ..., V_{k-1}, W`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct KConnPartition {
    pub parts: Vec<Vec<Vertex>>,
    pub rest: Vec<Vertex>,
}

impl KConnPartition {
    /// Uniformly random partition with parts of size `floor(n / (k-1))`.
    pub fn random(n: usize, k: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(invalid(format!("k-connectivity needs k >= 2, got {k}")));
        }
        let size = n / (k - 1);
        if size < 3 {
            return Err(invalid(format!("{n} vertices are too few for {} parts of at least 3", k - 1)));
        }
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(&mut rng_from(seed, stream::PARTITION));
        let mut parts: Vec<Vec<Vertex>> = order.chunks(size).take(k - 1).map(|c| c.to_vec()).collect();
        parts.iter_mut().for_each(|p| p.sort_unstable());
        let mut rest = order[size * (k - 1)..].to_vec();
        rest.sort_unstable();
        Ok(KConnPartition { parts, rest })
    }
}

pub struct KConnStrategy {
    k: usize,
    partition: KConnPartition,
    boards: MultiBoard,
    synced: bool,
}

/// Bipartite board between two parts; local left side is `a`.
fn bipartite_board(host: &Graph, a: &[Vertex], b: &[Vertex]) -> (BipartiteGraph, Vec<EdgeId>) {
    let h = a.len();
    let mut right = vec![u32::MAX; host.n()];
    for (j, &v) in b.iter().enumerate() {
        right[v] = j as u32;
    }
    let mut pairs: Vec<((u32, u32), EdgeId)> = Vec::new();
    for (i, &u) in a.iter().enumerate() {
        for (w, e) in host.incident(u) {
            if right[w] != u32::MAX {
                pairs.push(((i as u32, h as u32 + right[w]), e));
            }
        }
    }
    pairs.sort_unstable();
    let map = pairs.iter().map(|p| p.1).collect();
    let g = Graph::from_sorted_unique(2 * h, pairs.into_iter().map(|p| p.0).collect());
    (BipartiteGraph::new(g, h).expect("edges cross the parts"), map)
}

/// Maker strategy for the k-connectivity game on `g` against bias `b`.
/// Every sub-game is played as a `(1 : b k^2)` game through fake moves.
pub fn kconn_strategy(g: Arc<Graph>, b: usize, k: usize, consts: &StrategyConstants, seed: u64) -> Result<KConnStrategy> {
    consts.validate()?;
    if b == 0 {
        return Err(invalid("Breaker bias must be positive"));
    }
    let partition = KConnPartition::random(g.n(), k, seed)?;
    let virt = b * k * k;
    let wrap = |inner: Box<dyn MakerStrategy>, len: usize, salt: u64| -> Box<dyn MakerStrategy> {
        Box::new(FakeMoves::new(inner, len, b, virt, true, derive_seed(seed, salt)))
    };
    let mut boards = Vec::new();
    for (i, part) in partition.parts.iter().enumerate() {
        let (local, map) = g.induced(part);
        let inner = ham_strategy(Arc::new(local), virt, consts)?;
        let len = map.len();
        boards.push(SubBoard::new(format!("ham[{i}]"), map, wrap(Box::new(inner), len, boards.len() as u64)));
    }
    for i in 0..partition.parts.len() {
        for j in i + 1..partition.parts.len() {
            let (bg, map) = bipartite_board(&g, &partition.parts[i], &partition.parts[j]);
            let inner = pm_bipartite_strategy(&bg, virt, consts)?;
            let len = map.len();
            boards.push(SubBoard::new(format!("pm[{i},{j}]"), map, wrap(Box::new(inner), len, boards.len() as u64)));
        }
    }
    let mut in_rest = vec![false; g.n()];
    partition.rest.iter().for_each(|&w| in_rest[w] = true);
    for &w in &partition.rest {
        let map: Vec<EdgeId> = g.incident(w).filter(|&(v, _)| !in_rest[v]).map(|(_, e)| e).collect();
        let len = map.len();
        boards.push(SubBoard::new(format!("star[{w}]"), map, wrap(Box::new(StarStrategy::new(k)), len, boards.len() as u64)));
    }
    let boards = MultiBoard::new(g.edge_count(), boards)?;
    Ok(KConnStrategy { k, partition, boards, synced: false })
}

impl KConnStrategy {
    pub fn partition(&self) -> &KConnPartition {
        &self.partition
    }

    pub fn boards(&self) -> &MultiBoard {
        &self.boards
    }
}

impl MakerStrategy for KConnStrategy {
    fn name(&self) -> String {
        format!("kconn({})", self.k)
    }

    fn observe(&mut self, side: Side, e: EdgeId) {
        if self.synced {
            self.boards.observe(side, e);
        }
    }

    fn next_move(&mut self, board: &Board, rng: &mut GameRng) -> MakerAction {
        if !self.synced {
            self.synced = true;
            for e in board.maker_edges() {
                self.boards.observe(Side::Maker, e);
            }
            for e in board.breaker_edges() {
                self.boards.observe(Side::Breaker, e);
            }
        }
        self.boards.next_move(board, rng)
    }

    fn certificate(&self) -> Option<Certificate> {
        Some(Certificate::Connectivity { k: self.k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::breakers::RandomBreaker;
    use crate::engine::{play, GameConfig, GraphGoal, GraphObjective, Outcome};

    #[test]
    fn partition_sizes() {
        let p = KConnPartition::random(11, 4, 3).unwrap();
        assert_eq!(p.parts.len(), 3);
        assert!(p.parts.iter().all(|q| q.len() == 3));
        assert_eq!(p.rest.len(), 2);
        assert!(KConnPartition::random(10, 1, 0).is_err());
    }

    #[test]
    fn wins_on_complete_graph() {
        for (n, k) in [(30, 2), (150, 3)] {
            let g = Arc::new(Graph::complete(n));
            let mut maker = kconn_strategy(Arc::clone(&g), 1, k, &StrategyConstants::default(), 5).unwrap();
            let mut obj = GraphObjective::new(Arc::clone(&g), GraphGoal::Connectivity(k));
            let (t, _) =
                play(g.edge_count(), &GameConfig::new(1, 1), &mut maker, &mut RandomBreaker, &mut obj, 5).unwrap();
            assert_eq!(t.outcome(), &Outcome::MakerWin, "n {n} k {k}");
            let gaps = maker.boards().boards().iter().map(|b| b.max_breaker_gap()).max().unwrap();
            assert!(gaps <= k * k);
        }
    }
}
