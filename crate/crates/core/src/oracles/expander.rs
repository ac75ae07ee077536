//! `(R, c)`-expander verification.
//!
//! (E1): every `X` with `|X| <= R` has `|N(X) \ X| >= c|X|`.
//! (E2): every two disjoint `R`-sets are joined by an edge. Equivalently, no
//! `R`-set `X` leaves `R` vertices outside `X ∪ N(X)`.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matching::first_bits;
use super::search::{adjacency_masks, by_degree, mask_neighbourhood, mask_to_vec, subsets_of_size, Neighbourhood};
use super::{Verdict, Witness};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::{rng_from, stream};

/// Largest host on which exact enumeration is allowed at all.
pub const EXACT_LIMIT: usize = 24;
/// Hosts up to this size are checked exactly under [`CheckMode::Auto`].
pub const AUTO_EXACT_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Sampled,
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpanderParams {
    pub r: usize,
    pub c: f64,
    pub mode: CheckMode,
    pub samples: usize,
    pub seed: u64,
}

impl ExpanderParams {
    pub fn new(r: usize, c: f64) -> Self {
        ExpanderParams { r, c, mode: CheckMode::Auto, samples: 200, seed: 0 }
    }

    pub fn exact(mut self) -> Self {
        self.mode = CheckMode::Exact;
        self
    }

    pub fn sampled(mut self, samples: usize, seed: u64) -> Self {
        self.mode = CheckMode::Sampled;
        self.samples = samples;
        self.seed = seed;
        self
    }

    fn need(&self, size: usize) -> f64 {
        self.c * size as f64 - 1e-9
    }
}

pub fn expander_check(g: &Graph, p: &ExpanderParams) -> Result<Verdict> {
    let n = g.n();
    if p.r > n {
        return Err(invalid(format!("expander radius R={} exceeds n={n}", p.r)));
    }
    if !(p.c > 0.0) {
        return Err(invalid("expansion factor c must be positive"));
    }
    let exact = match p.mode {
        CheckMode::Exact => {
            if n > EXACT_LIMIT {
                return Err(Error::Budget(format!(
                    "exact expander check needs n <= {EXACT_LIMIT}, got {n}"
                )));
            }
            true
        }
        CheckMode::Sampled => false,
        CheckMode::Auto => n <= AUTO_EXACT_LIMIT,
    };
    if p.r == 0 || n == 0 {
        return Ok(Verdict::pass());
    }
    let verdict = if exact { check_exact(g, p) } else { check_sampled(g, p) };
    if let Some(w) = &verdict.witness {
        debug_assert!(recheck_expander_witness(g, p, w));
    }
    Ok(verdict)
}

fn check_exact(g: &Graph, p: &ExpanderParams) -> Verdict {
    let n = g.n();
    let adj = adjacency_masks(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    if 2 * p.r <= n {
        for set in subsets_of_size(n, p.r) {
            let rest = full & !(set | mask_neighbourhood(&adj, set));
            if rest.count_ones() as usize >= p.r {
                let y = first_bits(rest, p.r);
                return Verdict::fail(
                    Witness::Pair(mask_to_vec(set), mask_to_vec(y)),
                    "(E2) no edge between X and Y",
                );
            }
        }
    }
    for k in 1..=p.r {
        for set in subsets_of_size(n, k) {
            let ext = (mask_neighbourhood(&adj, set) & !set).count_ones() as usize;
            if (ext as f64) < p.need(k) {
                return Verdict::fail(Witness::Set(mask_to_vec(set)), "(E1) |N(X)\\X| < c|X|");
            }
        }
    }
    Verdict::pass().with_detail("exact")
}

fn check_sampled(g: &Graph, p: &ExpanderParams) -> Verdict {
    let n = g.n();
    let r = p.r;
    let mut rng = rng_from(p.seed, stream::AUDIT);
    let low = by_degree(g, |_| true, 24);
    let mut nb = Neighbourhood::new(g);
    let e2_live = 2 * r <= n;

    for s in 0..p.samples {
        nb.clear();
        // the first seeds are the lowest-degree vertices, then random ones
        let seed = if s < low.len() { low[s] } else { rng.gen_range(0..n) };
        nb.add(seed);
        if (nb.external() as f64) < p.need(1) {
            return Verdict::fail(Witness::Set(vec![seed]), "(E1) |N(X)\\X| < c|X| (sampled)");
        }
        let hit = nb.grow(&|_| true, &low, r, &mut rng, |x| (x.external() as f64) < p.need(x.len()));
        if hit {
            let mut x = nb.members().to_vec();
            x.sort_unstable();
            return Verdict::fail(Witness::Set(x), "(E1) |N(X)\\X| < c|X| (sampled)");
        }
        if e2_live && nb.len() == r {
            if let Some(v) = e2_from(&nb, r) {
                return v;
            }
        }
    }
    if e2_live {
        for _ in 0..p.samples {
            nb.clear();
            for v in sample(&mut rng, n, r).into_iter() {
                nb.add(v);
            }
            if (nb.external() as f64) < p.need(r) {
                let mut x = nb.members().to_vec();
                x.sort_unstable();
                return Verdict::fail(Witness::Set(x), "(E1) |N(X)\\X| < c|X| (sampled)");
            }
            if let Some(v) = e2_from(&nb, r) {
                return v;
            }
        }
    }
    Verdict::pass().with_detail(format!("sampled, {} greedy + {} random sets", p.samples, p.samples))
}

fn e2_from(nb: &Neighbourhood<'_>, r: usize) -> Option<Verdict> {
    let y = nb.outside(|_| true, r);
    (y.len() == r).then(|| {
        let mut x = nb.members().to_vec();
        x.sort_unstable();
        Verdict::fail(Witness::Pair(x, y), "(E2) no edge between X and Y (sampled)")
    })
}

/// Independent check that `w` really violates the expander conditions.
pub fn recheck_expander_witness(g: &Graph, p: &ExpanderParams, w: &Witness) -> bool {
    let distinct = |xs: &[Vertex]| {
        let mut s = xs.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == xs.len() && xs.iter().all(|&v| v < g.n())
    };
    match w {
        Witness::Set(x) => {
            if x.is_empty() || x.len() > p.r || !distinct(x) {
                return false;
            }
            let mut inx = vec![false; g.n()];
            x.iter().for_each(|&v| inx[v] = true);
            let mut out = vec![false; g.n()];
            for &v in x {
                for &u in g.neighbors(v) {
                    if !inx[u as usize] {
                        out[u as usize] = true;
                    }
                }
            }
            let ext = out.iter().filter(|&&b| b).count();
            (ext as f64) < p.need(x.len())
        }
        Witness::Pair(x, y) => {
            if x.len() != p.r || y.len() != p.r || !distinct(x) || !distinct(y) {
                return false;
            }
            if x.iter().any(|v| y.contains(v)) {
                return false;
            }
            x.iter().all(|&u| y.iter().all(|&v| !g.has_edge(u, v)))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_gnp;
    use crate::graph::GnpParams;

    #[test]
    fn complete_graph_expands() {
        let v = expander_check(&Graph::complete(6), &ExpanderParams::new(2, 1.0).exact()).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn two_triangles_fail_e2() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let p = ExpanderParams::new(3, 1.0);
        let v = expander_check(&g, &p.clone().exact()).unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness, Some(Witness::Pair(vec![0, 1, 2], vec![3, 4, 5])));
        assert!(recheck_expander_witness(&g, &p, v.witness.as_ref().unwrap()));
        // K4 meets the pair condition at R = 2 but not (E1) with c = 2
        let v = expander_check(&Graph::complete(4), &ExpanderParams::new(2, 2.0).exact()).unwrap();
        assert!(matches!(v.witness, Some(Witness::Set(_))));
    }

    #[test]
    fn exact_budget_enforced() {
        let g = Graph::complete(25);
        assert!(matches!(
            expander_check(&g, &ExpanderParams::new(2, 1.0).exact()),
            Err(Error::Budget(_))
        ));
        assert!(expander_check(&g, &ExpanderParams::new(30, 1.0)).is_err());
    }

    #[test]
    fn sampled_agrees_with_exact_on_small_gnp() {
        for seed in 0..30 {
            let g = gen_gnp(GnpParams::new(14, 0.6, seed).unwrap()).unwrap();
            let p = ExpanderParams::new(3, 1.0);
            let ex = expander_check(&g, &p.clone().exact()).unwrap();
            let sa = expander_check(&g, &p.sampled(300, seed)).unwrap();
            assert_eq!(ex.pass, sa.pass, "seed {seed}");
        }
    }
}
