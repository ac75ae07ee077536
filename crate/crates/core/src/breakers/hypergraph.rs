use crate::engine::{Board, BreakerStrategy, Certificate, GameConfig, Objective, Side};
use crate::error::{invalid, Result};
use crate::graph::EdgeId;
use crate::oracles::{Verdict, Witness};
use crate::rng::GameRng;

/// Ground set `0..ground` with an explicit family of winning sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    ground: usize,
    sets: Vec<Vec<EdgeId>>,
    containing: Vec<Vec<u32>>,
}

impl Hypergraph {
    pub fn new(ground: usize, sets: Vec<Vec<EdgeId>>) -> Result<Self> {
        let mut containing = vec![Vec::new(); ground];
        let mut clean = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(invalid(format!("winning set {i} is empty")));
            }
            for &x in &s {
                containing
                    .get_mut(x as usize)
                    .ok_or_else(|| invalid(format!("element {x} outside ground set of size {ground}")))?
                    .push(i as u32);
            }
            clean.push(s);
        }
        Ok(Hypergraph { ground, sets: clean, containing })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[Vec<EdgeId>] {
        &self.sets
    }

    pub fn containing(&self, x: EdgeId) -> &[u32] {
        &self.containing[x as usize]
    }

    /// `sum_F (1+b)^(-|F|/a)`.
    pub fn es_sum(&self, a: usize, b: usize) -> f64 {
        self.sets
            .iter()
            .map(|s| (1.0 + b as f64).powf(-(s.len() as f64) / a as f64))
            .sum()
    }

    /// The Breaker-win criterion `sum_F (1+b)^(-|F|/a) < 1/(1+b)`.
    pub fn satisfies_criterion(&self, a: usize, b: usize) -> bool {
        self.es_sum(a, b) < 1.0 / (1.0 + b as f64)
    }
}

/// Incremental potential `sum over sets without Breaker elements of
/// (1+b)^(-free/a)`, where `free` counts the set's unclaimed elements.
#[derive(Clone, Debug)]
pub struct PotentialState {
    a: f64,
    base: f64,
    alive: Vec<bool>,
    free: Vec<u32>,
    maker_full: Option<usize>,
    alive_count: usize,
    potential: f64,
}

impl PotentialState {
    pub fn new(h: &Hypergraph, cfg: &GameConfig) -> Self {
        let free: Vec<u32> = h.sets.iter().map(|s| s.len() as u32).collect();
        let mut st = PotentialState {
            a: cfg.a as f64,
            base: 1.0 + cfg.b as f64,
            alive: vec![true; h.sets.len()],
            free,
            maker_full: None,
            alive_count: h.sets.len(),
            potential: 0.0,
        };
        st.potential = st.recompute();
        st
    }

    fn term(&self, free: u32) -> f64 {
        self.base.powf(-(free as f64) / self.a)
    }

    pub fn potential(&self) -> f64 {
        self.potential
    }

    pub fn recompute(&self) -> f64 {
        (0..self.alive.len())
            .filter(|&i| self.alive[i])
            .map(|i| self.term(self.free[i]))
            .sum()
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    /// Index of a set fully claimed by Maker, if any.
    pub fn maker_full(&self) -> Option<usize> {
        self.maker_full
    }

    pub fn is_alive(&self, set: usize) -> bool {
        self.alive[set]
    }

    pub fn apply(&mut self, h: &Hypergraph, side: Side, x: EdgeId) {
        for &s in h.containing(x) {
            let s = s as usize;
            if !self.alive[s] {
                continue;
            }
            let before = self.term(self.free[s]);
            match side {
                Side::Breaker => {
                    self.alive[s] = false;
                    self.alive_count -= 1;
                    self.potential -= before;
                }
                Side::Maker => {
                    self.free[s] -= 1;
                    self.potential += self.term(self.free[s]) - before;
                    if self.free[s] == 0 && self.maker_full.is_none() {
                        self.maker_full = Some(s);
                    }
                }
            }
        }
    }

    /// Sum of the potential terms of the alive sets containing `x`.
    pub fn danger(&self, h: &Hypergraph, x: EdgeId) -> f64 {
        h.containing(x)
            .iter()
            .map(|&s| s as usize)
            .filter(|&s| self.alive[s])
            .map(|s| self.term(self.free[s]))
            .sum()
    }
}

/// Greedy Erdős-Selfridge Breaker: `count` picks, each the free element of
/// largest danger (ties to the lowest id), recomputed after every pick.
pub fn potential_breaker_move(h: &Hypergraph, ps: &PotentialState, board: &Board, count: usize) -> Vec<EdgeId> {
    let mut scratch = ps.clone();
    let mut taken = vec![false; h.ground()];
    let mut picks = Vec::with_capacity(count);
    for _ in 0..count {
        let mut best: Option<(f64, EdgeId)> = None;
        for x in 0..h.ground() as EdgeId {
            if !board.is_free(x) || taken[x as usize] {
                continue;
            }
            let d = scratch.danger(h, x);
            if best.is_none_or(|(bd, _)| d > bd + 1e-15) {
                best = Some((d, x));
            }
        }
        let Some((_, x)) = best else { break };
        taken[x as usize] = true;
        scratch.apply(h, Side::Breaker, x);
        picks.push(x);
    }
    picks
}

/// [`potential_breaker_move`] as a [`BreakerStrategy`].
#[derive(Clone, Debug)]
pub struct PotentialBreaker {
    h: Hypergraph,
    state: PotentialState,
}

impl PotentialBreaker {
    pub fn new(h: Hypergraph, cfg: &GameConfig) -> Self {
        let state = PotentialState::new(&h, cfg);
        PotentialBreaker { h, state }
    }

    pub fn state(&self) -> &PotentialState {
        &self.state
    }
}

impl BreakerStrategy for PotentialBreaker {
    fn name(&self) -> String {
        "potential".into()
    }

    fn observe(&mut self, side: Side, edge: EdgeId) {
        self.state.apply(&self.h, side, edge);
    }

    fn next_moves(&mut self, board: &Board, count: usize, _rng: &mut GameRng) -> Vec<EdgeId> {
        potential_breaker_move(&self.h, &self.state, board, count)
    }
}

/// Maker wins once he owns a whole set; Breaker once every set is hit.
#[derive(Clone, Debug)]
pub struct HypergraphObjective {
    h: Hypergraph,
    state: PotentialState,
}

impl HypergraphObjective {
    pub fn new(h: Hypergraph) -> Self {
        let state = PotentialState::new(&h, &GameConfig::new(1, 1));
        HypergraphObjective { h, state }
    }
}

impl Objective for HypergraphObjective {
    fn on_claim(&mut self, side: Side, edge: EdgeId, _board: &Board) -> Option<Side> {
        self.state.apply(&self.h, side, edge);
        if self.state.maker_full().is_some() {
            Some(Side::Maker)
        } else if self.state.alive_count() == 0 {
            Some(Side::Breaker)
        } else {
            None
        }
    }

    fn verify(&self, board: &Board, cert: Option<&Certificate>) -> Verdict {
        let full = self.h.sets().iter().position(|s| s.iter().all(|&x| board.is_maker(x)));
        match (full, cert) {
            (Some(_), _) => Verdict::pass(),
            (None, Some(Certificate::WinningSet { edges })) => {
                Verdict::fail(Witness::Set(edges.iter().map(|&e| e as usize).collect()), "set not fully owned by Maker")
            }
            (None, _) => Verdict::fail(Witness::Set(Vec::new()), "no winning set owned by Maker"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_set_is_taken() {
        let h = Hypergraph::new(3, vec![vec![1]]).unwrap();
        let cfg = GameConfig::new(1, 1);
        let ps = PotentialState::new(&h, &cfg);
        assert_eq!(potential_breaker_move(&h, &ps, &Board::new(3), 1), vec![1]);
    }

    #[test]
    fn incremental_matches_recompute() {
        let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![2, 3], vec![3, 4, 5], vec![0, 5]]).unwrap();
        let mut ps = PotentialState::new(&h, &GameConfig::new(2, 3));
        for (side, x) in [(Side::Maker, 2), (Side::Breaker, 3), (Side::Maker, 0), (Side::Maker, 5)] {
            ps.apply(&h, side, x);
            assert!((ps.potential() - ps.recompute()).abs() <= 1e-9 * ps.recompute().abs().max(1e-300));
        }
        assert_eq!(ps.alive_count(), 2);
        assert_eq!(ps.maker_full(), Some(3));
    }

    #[test]
    fn criterion_arithmetic() {
        // three disjoint triples at (1:1): 3/8 < 1/2
        let h = Hypergraph::new(9, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        assert!(h.satisfies_criterion(1, 1));
        assert!(Hypergraph::new(2, vec![vec![3]]).is_err());
    }
}
