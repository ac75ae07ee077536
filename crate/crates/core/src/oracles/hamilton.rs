//! Hamilton cycle certificates and the rotation-extension path finder.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Verdict, Witness};
use crate::graph::{Graph, Vertex};
use crate::rng::{rng_from, stream, GameRng};

pub fn check_hamilton_cycle(g: &Graph, cycle: &[Vertex]) -> Verdict {
    if let Some(v) = visit_once(g.n(), cycle) {
        return v;
    }
    if g.n() < 3 {
        return Verdict::fail(Witness::Set(cycle.to_vec()), "no Hamilton cycle on fewer than 3 vertices");
    }
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if !g.has_edge(u, v) {
            return Verdict::fail(Witness::Edge(u, v), "consecutive vertices not adjacent");
        }
    }
    Verdict::pass()
}

/// Passes iff `path` is a Hamilton path of `g` from `x` to `y`.
pub fn check_hamilton_path(g: &Graph, path: &[Vertex], x: Vertex, y: Vertex) -> Verdict {
    if let Some(v) = visit_once(g.n(), path) {
        return v;
    }
    if path.first() != Some(&x) || path.last() != Some(&y) {
        return Verdict::fail(Witness::Set(vec![x, y]), "wrong endpoints");
    }
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Verdict::fail(Witness::Edge(w[0], w[1]), "consecutive vertices not adjacent");
        }
    }
    Verdict::pass()
}

fn visit_once(n: usize, seq: &[Vertex]) -> Option<Verdict> {
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || seen[v] {
            return Some(Verdict::fail(Witness::Vertex(v), "vertex repeated or out of range"));
        }
        seen[v] = true;
    }
    seen.iter()
        .position(|&s| !s)
        .map(|v| Verdict::fail(Witness::Vertex(v), "vertex not visited"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosaConfig {
    /// Rotation budget per vertex; the whole search stops after
    /// `budget_factor * n` rotations and restarts combined.
    pub budget_factor: usize,
    /// Rotations without an extension before a restart.
    pub stall_factor: usize,
    pub seed: u64,
}

impl Default for PosaConfig {
    fn default() -> Self {
        PosaConfig { budget_factor: 50, stall_factor: 4, seed: 0 }
    }
}

const OFF: usize = usize::MAX;

struct PathState {
    path: Vec<Vertex>,
    pos: Vec<usize>,
}

impl PathState {
    fn new(n: usize, x: Vertex) -> Self {
        let mut pos = vec![OFF; n];
        pos[x] = 0;
        PathState { path: vec![x], pos }
    }

    fn end(&self) -> Vertex {
        *self.path.last().unwrap()
    }

    fn push(&mut self, v: Vertex) {
        self.pos[v] = self.path.len();
        self.path.push(v);
    }

    /// Rotation at pivot index `i`: the endpoint joins `path[i]` and the
    /// segment after `i` is reversed.
    fn rotate(&mut self, i: usize) {
        self.path[i + 1..].reverse();
        for (j, &v) in self.path.iter().enumerate().skip(i + 1) {
            self.pos[v] = j;
        }
    }

    /// Pivot indices available at the current endpoint.
    fn pivots(&self, g: &Graph) -> Vec<usize> {
        let e = self.end();
        let last = self.path.len() - 1;
        g.neighbors(e)
            .iter()
            .map(|&w| self.pos[w as usize])
            .filter(|&i| i != OFF && i + 1 < last)
            .collect()
    }
}

/// Searches for a Hamilton path from `x` to `y` by rotation-extension with
/// `x` fixed: first a Hamilton path of `g - y` starting at `x`, then
/// rotations until the endpoint is adjacent to `y`. Returns `None` when the
/// budget runs out; a returned path is always verified.
pub fn posa_ham_path(g: &Graph, x: Vertex, y: Vertex, cfg: &PosaConfig) -> Option<Vec<Vertex>> {
    let n = g.n();
    assert!(x != y && x < n && y < n, "posa_ham_path needs distinct x, y in range");
    let mut rng = rng_from(cfg.seed, stream::MAKER);
    let budget = cfg.budget_factor.max(1) * n;
    let stall_limit = cfg.stall_factor.max(1) * n;
    let mut spent = 0usize;
    let mut on_path_y = vec![false; n];
    for &w in g.neighbors(y) {
        on_path_y[w as usize] = true;
    }

    while spent < budget {
        spent += 1;
        let mut st = PathState::new(n, x);
        let mut stall = 0usize;
        loop {
            if st.path.len() == n - 1 {
                if on_path_y[st.end()] {
                    st.push(y);
                    let path = st.path;
                    return check_hamilton_path(g, &path, x, y).pass.then_some(path);
                }
                // close in on y: prefer rotations whose new endpoint sees y
                let pivots = st.pivots(g);
                if pivots.is_empty() || stall >= stall_limit || spent >= budget {
                    break;
                }
                let pick = pivots
                    .iter()
                    .copied()
                    .find(|&i| on_path_y[st.path[i + 1]])
                    .unwrap_or_else(|| pivots[rng.gen_range(0..pivots.len())]);
                st.rotate(pick);
                stall += 1;
                spent += 1;
                continue;
            }
            if let Some(v) = extension(g, &st, y, &mut rng) {
                st.push(v);
                stall = 0;
                continue;
            }
            let pivots = st.pivots(g);
            if pivots.is_empty() || stall >= stall_limit || spent >= budget {
                break;
            }
            let fresh = |i: usize| {
                let w = st.path[i + 1];
                g.neighbors(w).iter().any(|&u| st.pos[u as usize] == OFF && u as usize != y)
            };
            let good: Vec<usize> = pivots.iter().copied().filter(|&i| fresh(i)).collect();
            let pick = good
                .choose(&mut rng)
                .copied()
                .unwrap_or_else(|| pivots[rng.gen_range(0..pivots.len())]);
            st.rotate(pick);
            stall += 1;
            spent += 1;
        }
    }
    None
}

/// Off-path neighbour of the endpoint with the fewest off-path neighbours.
fn extension(g: &Graph, st: &PathState, y: Vertex, rng: &mut GameRng) -> Option<Vertex> {
    let free_deg = |v: Vertex| {
        g.neighbors(v)
            .iter()
            .filter(|&&u| st.pos[u as usize] == OFF && u as usize != y)
            .count()
    };
    let mut cands: Vec<Vertex> = g
        .neighbors(st.end())
        .iter()
        .map(|&u| u as usize)
        .filter(|&u| st.pos[u] == OFF && u != y)
        .collect();
    cands.shuffle(rng);
    cands.into_iter().min_by_key(|&v| free_deg(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_checks() {
        let c5 = Graph::cycle(5);
        assert!(check_hamilton_cycle(&c5, &[0, 1, 2, 3, 4]).pass);
        let v = check_hamilton_cycle(&c5, &[0, 2, 1, 3, 4]);
        assert!(!v.pass);
        assert_eq!(v.witness, Some(Witness::Edge(0, 2)));
        assert!(!check_hamilton_cycle(&c5, &[0, 1, 2, 3]).pass);
        assert!(!check_hamilton_cycle(&c5, &[0, 1, 2, 3, 3]).pass);
    }

    #[test]
    fn k4_any_pair() {
        let g = Graph::complete(4);
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    let p = posa_ham_path(&g, x, y, &PosaConfig::default()).unwrap();
                    assert_eq!(p.len(), 4);
                }
            }
        }
    }

    #[test]
    fn star_has_no_path() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(posa_ham_path(&g, 1, 2, &PosaConfig::default()).is_none());
    }

    #[test]
    fn dense_random_graph() {
        use crate::graph::{gen_gnp, GnpParams};
        let g = gen_gnp(GnpParams::new(300, 0.05, 3).unwrap()).unwrap();
        let p = posa_ham_path(&g, 0, 1, &PosaConfig::default()).expect("path");
        assert!(check_hamilton_path(&g, &p, 0, 1).pass);
    }
}
