//! Incremental neighbourhood bookkeeping and greedy growth used by the
//! sampled expander and Hall checks to hunt for small-neighbourhood sets.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, Vertex};
use crate::rng::GameRng;

/// Tracks a set `X` together with `|N(X) \ X|`.
pub(crate) struct Neighbourhood<'g> {
    g: &'g Graph,
    in_x: Vec<bool>,
    cnt: Vec<u32>,
    members: Vec<Vertex>,
    frontier: Vec<Vertex>,
    ext: usize,
}

impl<'g> Neighbourhood<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Neighbourhood {
            g,
            in_x: vec![false; n],
            cnt: vec![0; n],
            members: Vec::new(),
            frontier: Vec::new(),
            ext: 0,
        }
    }

    pub fn clear(&mut self) {
        for &v in &self.members {
            self.in_x[v] = false;
            for &w in self.g.neighbors(v) {
                self.cnt[w as usize] = 0;
            }
        }
        self.members.clear();
        self.frontier.clear();
        self.ext = 0;
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// `|N(X) \ X|`.
    pub fn external(&self) -> usize {
        self.ext
    }

    /// Change of `|N(X) \ X|` if `u` were added.
    pub fn gain(&self, u: Vertex) -> isize {
        let fresh = self
            .g
            .neighbors(u)
            .iter()
            .filter(|&&w| self.cnt[w as usize] == 0 && !self.in_x[w as usize])
            .count() as isize;
        fresh - isize::from(self.cnt[u] > 0)
    }

    pub fn add(&mut self, u: Vertex) {
        debug_assert!(!self.in_x[u]);
        self.in_x[u] = true;
        self.members.push(u);
        if self.cnt[u] > 0 {
            self.ext -= 1;
        }
        for &w in self.g.neighbors(u) {
            let w = w as usize;
            self.cnt[w] += 1;
            if self.cnt[w] == 1 {
                self.frontier.push(w);
                if !self.in_x[w] {
                    self.ext += 1;
                }
            }
        }
    }

    /// Vertices outside `X ∪ N(X)` accepted by `keep`, at most `limit`.
    pub fn outside(&self, keep: impl Fn(Vertex) -> bool, limit: usize) -> Vec<Vertex> {
        (0..self.g.n())
            .filter(|&v| !self.in_x[v] && self.cnt[v] == 0 && keep(v))
            .take(limit)
            .collect()
    }

    /// Greedily grows `X` from its current content up to `target` vertices
    /// drawn from `allowed`, always adding a candidate with the smallest
    /// gain. `stop` is called after every addition; growth ends when it
    /// returns true (the function then returns true as well).
    pub fn grow(
        &mut self,
        allowed: &dyn Fn(Vertex) -> bool,
        low_degree: &[Vertex],
        target: usize,
        rng: &mut GameRng,
        mut stop: impl FnMut(&Self) -> bool,
    ) -> bool {
        let n = self.g.n();
        let mut cand: Vec<Vertex> = Vec::with_capacity(128);
        while self.members.len() < target {
            cand.clear();
            // near candidates: members of N(X) and their neighbours
            let mut picks: Vec<Vertex> = self
                .frontier
                .choose_multiple(rng, 24)
                .copied()
                .collect();
            for i in 0..picks.len() {
                let w = picks[i];
                let nb = self.g.neighbors(w);
                if !nb.is_empty() {
                    for _ in 0..2 {
                        picks.push(nb[rng.gen_range(0..nb.len())] as usize);
                    }
                }
            }
            cand.extend(picks);
            cand.extend(low_degree.iter().copied().filter(|&v| !self.in_x[v]).take(12));
            for _ in 0..4 {
                cand.push(rng.gen_range(0..n));
            }
            let best = cand
                .iter()
                .copied()
                .filter(|&v| !self.in_x[v] && allowed(v))
                .min_by_key(|&v| (self.gain(v), v));
            let Some(u) = best.or_else(|| (0..n).find(|&v| !self.in_x[v] && allowed(v))) else {
                return false;
            };
            self.add(u);
            if stop(self) {
                return true;
            }
        }
        false
    }
}

/// Vertices accepted by `allowed`, sorted by degree (ties by index).
pub(crate) fn by_degree(g: &Graph, allowed: impl Fn(Vertex) -> bool, limit: usize) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = (0..g.n()).filter(|&v| allowed(v)).collect();
    vs.sort_by_key(|&v| (g.degree(v), v));
    vs.truncate(limit);
    vs
}

/// All subsets of `0..n` with exactly `k` bits, in increasing order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << n;
    let first: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = if k > n { limit } else { first };
    let mut done_zero = false;
    std::iter::from_fn(move || {
        if k == 0 {
            if done_zero {
                return None;
            }
            done_zero = true;
            return Some(0);
        }
        if cur >= limit {
            return None;
        }
        let out = cur as u32;
        // Gosper's hack
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        Some(out)
    })
}

pub(crate) fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect()
}

pub(crate) fn mask_neighbourhood(adj: &[u32], set: u32) -> u32 {
    let mut nb = 0u32;
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        nb |= adj[v];
        s &= s - 1;
    }
    nb
}

pub(crate) fn mask_to_vec(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from;

    #[test]
    fn gosper_counts() {
        assert_eq!(subsets_of_size(5, 2).count(), 10);
        assert_eq!(subsets_of_size(5, 0).count(), 1);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert!(subsets_of_size(6, 3).all(|s| s.count_ones() == 3));
    }

    #[test]
    fn neighbourhood_tracks_external() {
        let g = Graph::path(5);
        let mut nb = Neighbourhood::new(&g);
        nb.add(2);
        assert_eq!(nb.external(), 2);
        assert_eq!(nb.gain(1), 0);
        nb.add(1);
        assert_eq!(nb.external(), 2);
        nb.clear();
        assert_eq!(nb.external(), 0);
    }

    #[test]
    fn grow_finds_isolated_vertices() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let low = by_degree(&g, |_| true, 16);
        let mut nb = Neighbourhood::new(&g);
        let mut rng = rng_from(1, 0);
        let hit = nb.grow(&|_| true, &low, 3, &mut rng, |s| s.len() == 3 && s.external() == 0);
        assert!(hit);
    }
}
