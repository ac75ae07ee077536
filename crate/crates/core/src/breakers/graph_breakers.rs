use std::sync::Arc;

use rand::seq::index::sample;

use crate::engine::{Board, BreakerStrategy, GameConfig, Side};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::rng::GameRng;

/// `min(b, |F|)` distinct free edges, uniformly at random.
pub fn random_breaker_move(board: &Board, cfg: &GameConfig, rng: &mut GameRng) -> Vec<EdgeId> {
    let free = board.free_edges();
    let count = cfg.b.min(free.len());
    sample(rng, free.len(), count).into_iter().map(|i| free[i]).collect()
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RandomBreaker;

impl BreakerStrategy for RandomBreaker {
    fn name(&self) -> String {
        "random".into()
    }

    fn next_moves(&mut self, board: &Board, count: usize, rng: &mut GameRng) -> Vec<EdgeId> {
        let free = board.free_edges();
        sample(rng, free.len(), count.min(free.len())).into_iter().map(|i| free[i]).collect()
    }
}

/// Attacks the vertex of smallest Maker degree, preferring the one with the
/// most free edges (ties to the lowest index), and claims its lowest-id free
/// edges.
#[derive(Clone, Debug)]
pub struct DegreeAttacker {
    host: Arc<Graph>,
    maker_deg: Vec<u32>,
    free_deg: Vec<u32>,
    cursor: Vec<u32>,
}

impl DegreeAttacker {
    pub fn new(host: Arc<Graph>) -> Self {
        let n = host.n();
        let free_deg = (0..n).map(|v| host.degree(v) as u32).collect();
        DegreeAttacker { host, maker_deg: vec![0; n], free_deg, cursor: vec![0; n] }
    }

    fn target(&self) -> Option<Vertex> {
        let mut best: Option<Vertex> = None;
        for v in 0..self.host.n() {
            if self.free_deg[v] == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    (self.maker_deg[v], std::cmp::Reverse(self.free_deg[v]))
                        < (self.maker_deg[b], std::cmp::Reverse(self.free_deg[b]))
                }
            };
            if better {
                best = Some(v);
            }
        }
        best
    }

    fn lowest_free_at(&mut self, v: Vertex, board: &Board, taken: &[EdgeId]) -> Option<EdgeId> {
        let inc = self.host.incident_edges(v);
        let mut c = self.cursor[v] as usize;
        while c < inc.len() && !board.is_free(inc[c]) {
            c += 1;
        }
        self.cursor[v] = c as u32;
        inc[c..].iter().copied().find(|&e| board.is_free(e) && !taken.contains(&e))
    }
}

/// Free-function form; `attacker` must have observed every claim so far.
pub fn degree_attacker_move(attacker: &mut DegreeAttacker, board: &Board, cfg: &GameConfig) -> Vec<EdgeId> {
    let count = cfg.b.min(board.free_count());
    attacker.pick(board, count)
}

impl DegreeAttacker {
    fn pick(&mut self, board: &Board, count: usize) -> Vec<EdgeId> {
        let mut picks: Vec<EdgeId> = Vec::with_capacity(count);
        let mut touched: Vec<Vertex> = Vec::new();
        while picks.len() < count {
            let Some(v) = self.target() else { break };
            match self.lowest_free_at(v, board, &picks) {
                Some(e) => {
                    let (x, y) = self.host.endpoints(e);
                    self.free_deg[x] -= 1;
                    self.free_deg[y] -= 1;
                    touched.extend([x, y]);
                    picks.push(e);
                }
                None => self.free_deg[v] = 0,
            }
        }
        // the engine reports the claims through observe; undo the preview
        for &e in &picks {
            let (x, y) = self.host.endpoints(e);
            self.free_deg[x] += 1;
            self.free_deg[y] += 1;
        }
        if picks.len() < count {
            // fall back to any free edges (only when the host is exhausted)
            for &e in board.free_edges() {
                if picks.len() == count {
                    break;
                }
                if !picks.contains(&e) {
                    picks.push(e);
                }
            }
        }
        picks
    }
}

impl BreakerStrategy for DegreeAttacker {
    fn name(&self) -> String {
        "degree-attacker".into()
    }

    fn observe(&mut self, side: Side, edge: EdgeId) {
        let (u, v) = self.host.endpoints(edge);
        for x in [u, v] {
            self.free_deg[x] = self.free_deg[x].saturating_sub(1);
            if side == Side::Maker {
                self.maker_deg[x] += 1;
            }
        }
    }

    fn next_moves(&mut self, board: &Board, count: usize, _rng: &mut GameRng) -> Vec<EdgeId> {
        self.pick(board, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from;

    #[test]
    fn random_is_deterministic_and_bounded() {
        let board = Board::new(10);
        let cfg = GameConfig::new(1, 3);
        let a = random_breaker_move(&board, &cfg, &mut rng_from(4, 3));
        let b = random_breaker_move(&board, &cfg, &mut rng_from(4, 3));
        assert_eq!(a, b);
        assert_eq!(a.len(), 3);
        let mut one = Board::new(2);
        one.claim(0, Side::Maker).unwrap();
        assert_eq!(random_breaker_move(&one, &cfg, &mut rng_from(0, 0)), vec![1]);
        one.claim(1, Side::Maker).unwrap();
        assert!(random_breaker_move(&one, &cfg, &mut rng_from(0, 0)).is_empty());
    }

    #[test]
    fn attacker_goes_for_the_star_centre() {
        // star at 3 plus a disjoint edge
        let host = Arc::new(Graph::from_edges(7, [(3, 0), (3, 1), (3, 2), (3, 4), (5, 6)]).unwrap());
        let mut att = DegreeAttacker::new(host.clone());
        let board = Board::new(host.edge_count());
        let picks = degree_attacker_move(&mut att, &board, &GameConfig::new(1, 2));
        for e in picks {
            let (u, v) = host.endpoints(e);
            assert!(u == 3 || v == 3);
        }
    }

    #[test]
    fn attacker_ties_to_lowest_index() {
        let host = Arc::new(Graph::cycle(6));
        let mut att = DegreeAttacker::new(host.clone());
        let board = Board::new(6);
        let picks = degree_attacker_move(&mut att, &board, &GameConfig::new(1, 1));
        assert_eq!(host.endpoints(picks[0]).0, 0);
    }
}
