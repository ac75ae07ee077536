//! Exhaustive game-tree search for tiny Maker-Breaker games (ground sets of
//! at most 32 elements, states encoded as bitmasks).

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::hypergraph::{potential_breaker_move, Hypergraph, PotentialState};
use crate::engine::{Board, Certificate, Claim, GameConfig, MakerAction, MakerStrategy, Side};
use crate::graph::EdgeId;
use crate::rng::GameRng;

/// Solves `(a:b)` games under optimal play on both sides. The player to move
/// is derived from the claim counts, so every state must be reachable by
/// full turns.
#[derive(Clone, Debug)]
pub struct GameTreeSolver {
    ground: usize,
    sets: Vec<u32>,
    a: usize,
    b: usize,
    maker_first: bool,
    memo: HashMap<u64, bool>,
}

impl GameTreeSolver {
    pub fn new(h: &Hypergraph, cfg: &GameConfig) -> Self {
        assert!(h.ground() <= 32, "solver handles at most 32 elements");
        let sets = h
            .sets()
            .iter()
            .map(|s| s.iter().fold(0u32, |m, &x| m | (1 << x)))
            .collect();
        GameTreeSolver {
            ground: h.ground(),
            sets,
            a: cfg.a,
            b: cfg.b,
            maker_first: cfg.maker_first,
            memo: HashMap::new(),
        }
    }

    fn full(&self) -> u32 {
        if self.ground == 32 {
            u32::MAX
        } else {
            (1u32 << self.ground) - 1
        }
    }

    pub fn to_move(&self, maker: u32, breaker: u32) -> Side {
        let t = (maker.count_ones() + breaker.count_ones()) as usize;
        let (first, len) = if self.maker_first { (Side::Maker, self.a) } else { (Side::Breaker, self.b) };
        if t % (self.a + self.b) < len {
            first
        } else {
            first.other()
        }
    }

    /// Elements of sets still alive for Maker.
    fn relevant(&self, breaker: u32) -> u32 {
        self.sets.iter().filter(|&&s| s & breaker == 0).fold(0, |m, &s| m | s)
    }

    /// Does Maker win from this position with optimal play?
    pub fn maker_wins(&mut self, maker: u32, breaker: u32) -> bool {
        if self.sets.iter().any(|&s| s & maker == s) {
            return true;
        }
        let free = self.full() & !maker & !breaker;
        let useful = self.relevant(breaker) & free;
        if useful == 0 {
            return false;
        }
        let key = (maker as u64) << 32 | breaker as u64;
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let maker_turn = self.to_move(maker, breaker) == Side::Maker;
        let mut rest = useful;
        let mut result = !maker_turn;
        while rest != 0 {
            let x = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let child = if maker_turn {
                self.maker_wins(maker | x, breaker)
            } else {
                self.maker_wins(maker, breaker | x)
            };
            if child == maker_turn {
                result = maker_turn;
                break;
            }
        }
        self.memo.insert(key, result);
        result
    }

    pub fn solve(&mut self) -> bool {
        self.maker_wins(0, 0)
    }
}

/// Can any Maker play beat the deterministic potential Breaker? Searches
/// all Maker lines against that fixed Breaker.
pub fn best_response_wins(h: &Hypergraph, cfg: &GameConfig) -> bool {
    struct Search<'a> {
        h: &'a Hypergraph,
        cfg: &'a GameConfig,
        memo: HashMap<u64, bool>,
    }

    impl Search<'_> {
        fn state(&self, board: &Board) -> PotentialState {
            let mut ps = PotentialState::new(self.h, self.cfg);
            for x in 0..self.h.ground() as EdgeId {
                if !board.is_free(x) {
                    let side = if board.is_maker(x) { Side::Maker } else { Side::Breaker };
                    ps.apply(self.h, side, x);
                }
            }
            ps
        }

        fn maker_won(&self, board: &Board) -> bool {
            self.h.sets().iter().any(|s| s.iter().all(|&x| board.is_maker(x)))
        }

        fn key(board: &Board) -> u64 {
            let mut m = 0u64;
            let mut b = 0u64;
            for x in 0..board.len() {
                if board.is_maker(x as EdgeId) {
                    m |= 1 << x;
                } else if board.is_breaker(x as EdgeId) {
                    b |= 1 << x;
                }
            }
            m << 32 | b
        }

        fn breaker_turn(&mut self, mut board: Board) -> bool {
            let ps = self.state(&board);
            if ps.alive_count() == 0 {
                return false;
            }
            let count = self.cfg.b.min(board.free_count());
            for x in potential_breaker_move(self.h, &ps, &board, count) {
                board.claim(x, Side::Breaker).unwrap();
            }
            self.maker_turn(board, self.cfg.a)
        }

        fn maker_turn(&mut self, board: Board, left: usize) -> bool {
            if self.maker_won(&board) {
                return true;
            }
            if board.free_count() == 0 {
                return false;
            }
            if left == 0 {
                return self.breaker_turn(board);
            }
            let key = Self::key(&board) ^ ((left as u64) << 60);
            if let Some(&v) = self.memo.get(&key) {
                return v;
            }
            let mut frees = board.free_edges().to_vec();
            frees.sort_unstable();
            let mut win = false;
            for x in frees {
                let mut next = board.clone();
                next.claim(x, Side::Maker).unwrap();
                if self.maker_turn(next, left - 1) {
                    win = true;
                    break;
                }
            }
            self.memo.insert(key, win);
            win
        }
    }

    assert!(h.ground() <= 28, "best-response search handles at most 28 elements");
    let mut s = Search { h, cfg, memo: HashMap::new() };
    let board = Board::new(h.ground());
    if cfg.maker_first {
        s.maker_turn(board, cfg.a)
    } else {
        s.breaker_turn(board)
    }
}

/// Maker that plays a game-theoretically winning move whenever one exists
/// (per the shared solver), otherwise the lowest free element.
#[derive(Clone, Debug)]
pub struct SolverMaker {
    solver: Rc<RefCell<GameTreeSolver>>,
    maker: u32,
    breaker: u32,
}

impl SolverMaker {
    pub fn new(solver: Rc<RefCell<GameTreeSolver>>) -> Self {
        SolverMaker { solver, maker: 0, breaker: 0 }
    }
}

impl MakerStrategy for SolverMaker {
    fn name(&self) -> String {
        "solver".into()
    }

    fn observe(&mut self, side: Side, edge: EdgeId) {
        match side {
            Side::Maker => self.maker |= 1 << edge,
            Side::Breaker => self.breaker |= 1 << edge,
        }
    }

    fn next_move(&mut self, board: &Board, _rng: &mut GameRng) -> MakerAction {
        let mut frees = board.free_edges().to_vec();
        frees.sort_unstable();
        let mut solver = self.solver.borrow_mut();
        let pick = frees
            .iter()
            .copied()
            .find(|&x| solver.maker_wins(self.maker | 1 << x, self.breaker))
            .or_else(|| frees.first().copied());
        match pick {
            Some(x) => MakerAction::Claim(Claim::new(x, "solver")),
            None => MakerAction::Done,
        }
    }

    fn certificate(&self) -> Option<Certificate> {
        let solver = self.solver.borrow();
        solver.sets.iter().find(|&&s| s & self.maker == s).map(|&s| Certificate::WinningSet {
            edges: (0..32).filter(|&x| s >> x & 1 == 1).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_values() {
        // a single pair, Maker first at (1:1): Breaker takes the other element
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let mut cfg = GameConfig::new(1, 1);
        cfg.maker_first = true;
        assert!(!GameTreeSolver::new(&h, &cfg).solve());
        // two elements, either one wins
        let h = Hypergraph::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(GameTreeSolver::new(&h, &GameConfig::new(1, 1)).solve());
    }

    #[test]
    fn disjoint_triples_are_breaker_wins() {
        let h = Hypergraph::new(9, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        let cfg = GameConfig::new(1, 1);
        assert!(h.satisfies_criterion(1, 1));
        assert!(!GameTreeSolver::new(&h, &cfg).solve());
        assert!(!best_response_wins(&h, &cfg));
    }

    #[test]
    fn violated_criterion_instance() {
        // all pairs of 4 elements, Breaker first: Maker still wins
        let sets = vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]];
        let h = Hypergraph::new(4, sets).unwrap();
        let cfg = GameConfig::new(1, 1);
        assert!(!h.satisfies_criterion(1, 1));
        assert!(best_response_wins(&h, &cfg));
        assert!(GameTreeSolver::new(&h, &cfg).solve());
    }
}
