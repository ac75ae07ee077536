//! Sampled pair potential: Maker plays Breaker in a game whose winning sets
//! are edge sets between pairs of vertex (or window) sets. The full family
//! is exponentially large, so only a seeded sample of sets is tracked and
//! each free edge is scored by the Beck-style danger of the sampled sets it
//! touches.

use std::collections::HashMap;

use crate::engine::Side;
use crate::graph::EdgeId;

#[derive(Clone, Debug)]
struct PairSet {
    edges: Vec<EdgeId>,
    free: u32,
    /// No Maker edge yet.
    alive: bool,
}

#[derive(Clone, Debug)]
pub struct PairPotential {
    sets: Vec<PairSet>,
    index: HashMap<EdgeId, Vec<u32>>,
    beta: f64,
    /// Total family size divided by the sample size.
    scale: f64,
}

impl PairPotential {
    /// `sets[i]` lists the edges of the i-th sampled winning set that are
    /// not Breaker's; `hit[i]` says Maker already owns an edge of it.
    /// `beta` is the opponent's bias, `family` the size of the whole family.
    pub fn new(sets: Vec<Vec<EdgeId>>, hit: &[bool], is_free: impl Fn(EdgeId) -> bool, beta: f64, family: f64) -> Self {
        let mut index: HashMap<EdgeId, Vec<u32>> = HashMap::new();
        let sets: Vec<PairSet> = sets
            .into_iter()
            .enumerate()
            .map(|(i, edges)| {
                for &e in &edges {
                    index.entry(e).or_default().push(i as u32);
                }
                let free = edges.iter().filter(|&&e| is_free(e)).count() as u32;
                PairSet { edges, free, alive: !hit[i] }
            })
            .collect();
        let scale = if sets.is_empty() { 0.0 } else { family / sets.len() as f64 };
        PairPotential { sets, index, beta: beta.max(1e-9), scale }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn danger(&self, free: u32) -> f64 {
        (-(free as f64) / self.beta).exp2()
    }

    pub fn observe(&mut self, side: Side, e: EdgeId) {
        let Some(ids) = self.index.get(&e) else { return };
        for &i in ids {
            let s = &mut self.sets[i as usize];
            s.free = s.free.saturating_sub(1);
            if side == Side::Maker {
                s.alive = false;
            }
        }
    }

    /// Sets Maker has not hit yet.
    pub fn alive(&self) -> usize {
        self.sets.iter().filter(|s| s.alive).count()
    }

    /// Alive sets that Breaker has fully claimed.
    pub fn lost(&self) -> usize {
        self.sets.iter().filter(|s| s.alive && s.free == 0).count()
    }

    /// Alive sets that can still be hit.
    pub fn live(&self) -> usize {
        self.sets.iter().filter(|s| s.alive && s.free > 0).count()
    }

    /// Estimated potential of the whole family, counting live sets only.
    pub fn potential(&self) -> f64 {
        let sum: f64 = self.sets.iter().filter(|s| s.alive && s.free > 0).map(|s| self.danger(s.free)).sum();
        sum * self.scale
    }

    /// The free edge with the largest total danger (ties to the lowest id).
    pub fn best(&self, is_free: impl Fn(EdgeId) -> bool) -> Option<EdgeId> {
        let mut score: HashMap<EdgeId, f64> = HashMap::new();
        for s in self.sets.iter().filter(|s| s.alive && s.free > 0) {
            let d = self.danger(s.free);
            for &e in &s.edges {
                if is_free(e) {
                    *score.entry(e).or_insert(0.0) += d;
                }
            }
        }
        score
            .into_iter()
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(e, _)| e)
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scores_follow_danger() {
        // set 0 has one free edge left, so its edge is the most urgent
        let sets = vec![vec![1, 2, 3], vec![3, 4], vec![5]];
        let pp = PairPotential::new(sets, &[false, false, false], |_| true, 1.0, 3.0);
        // edge 5: 2^-1; edge 3: 2^-3 + 2^-2
        assert_eq!(pp.best(|_| true), Some(5));
        assert_eq!(pp.live(), 3);
    }

    #[test]
    fn maker_hit_kills_sets_and_breaker_shrinks_them() {
        let mut pp = PairPotential::new(vec![vec![1, 2], vec![2, 3]], &[false, false], |_| true, 2.0, 2.0);
        pp.observe(Side::Maker, 2);
        assert_eq!(pp.alive(), 0);
        assert_eq!(pp.best(|e| e != 2), None);
        let mut pp = PairPotential::new(vec![vec![1, 2]], &[false], |_| true, 1.0, 10.0);
        let before = pp.potential();
        pp.observe(Side::Breaker, 1);
        assert!(pp.potential() > before);
        pp.observe(Side::Breaker, 2);
        assert_eq!((pp.lost(), pp.live()), (1, 0));
    }

    #[test]
    fn ties_go_to_lowest_id() {
        let pp = PairPotential::new(vec![vec![7, 4, 9]], &[false], |_| true, 1.0, 1.0);
        assert_eq!(pp.best(|_| true), Some(4));
    }
}
