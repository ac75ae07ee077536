//! Seeded random boards and the deterministic `G_k` gadget.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{BipartiteGraph, Graph};
use crate::error::{invalid, Result};
use crate::rng::{rng_from, stream, GameRng};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let params = GnpParams { n, p, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("G(n,p) needs n >= 1"));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(invalid(format!("edge probability {} outside [0,1]", self.p)));
        }
        Ok(())
    }

    /// `p = ln^e(n) / n`, clamped to 1.
    pub fn log_power_p(n: usize, exponent: f64) -> f64 {
        let n = n as f64;
        (n.ln().powf(exponent) / n).min(1.0)
    }
}

/// Calls `emit(i)` for every index `i < cells` kept by independent
/// Bernoulli(p) trials, using geometric skips (Batagelj-Brandes).
fn bernoulli_cells(cells: u64, p: f64, rng: &mut GameRng, mut emit: impl FnMut(u64)) {
    if p <= 0.0 || cells == 0 {
        return;
    }
    if p >= 1.0 {
        (0..cells).for_each(emit);
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut idx: i64 = -1;
    loop {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        if !skip.is_finite() || skip >= (cells as f64) {
            return;
        }
        idx += 1 + skip as i64;
        if idx as u64 >= cells {
            return;
        }
        emit(idx as u64);
    }
}

/// Erdős–Rényi `G(n,p)`; identical parameters give an identical graph.
pub fn gen_gnp(params: GnpParams) -> Result<Graph> {
    params.validate()?;
    let n = params.n;
    let mut rng = rng_from(params.seed, stream::GRAPH);
    let mut edges = Vec::new();
    // Row-major over the strict upper triangle: row u holds pairs (u, u+1..n).
    let mut row = 0usize;
    let mut row_start = 0u64;
    let row_len = |u: usize| (n - 1 - u) as u64;
    let cells = (n as u64) * (n as u64 - 1) / 2;
    bernoulli_cells(cells, params.p, &mut rng, |idx| {
        while idx >= row_start + row_len(row) {
            row_start += row_len(row);
            row += 1;
        }
        let v = row + 1 + (idx - row_start) as usize;
        edges.push((row as u32, v as u32));
    });
    Ok(Graph::from_sorted_unique(n, edges))
}

/// Random bipartite graph with parts of size `n/2`; each cross pair is an
/// edge independently with probability `p`.
pub fn gen_bipartite(n: usize, p: f64, seed: u64) -> Result<BipartiteGraph> {
    if n % 2 == 1 {
        return Err(invalid(format!("bipartite board needs an even vertex count, got {n}")));
    }
    GnpParams { n: n.max(1), p, seed }.validate()?;
    let half = n / 2;
    let mut rng = rng_from(seed, stream::GRAPH);
    let mut edges = Vec::new();
    bernoulli_cells((half * half) as u64, p, &mut rng, |idx| {
        let u = (idx / half as u64) as u32;
        let v = (half as u64 + idx % half as u64) as u32;
        edges.push((u, v));
    });
    BipartiteGraph::new(Graph::from_sorted_unique(n, edges), half)
}

/// How the perfect matchings between the cycles of `G_k` are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GkPairing {
    /// Position `t` of cycle `i` is matched to position `t` of cycle `j`.
    #[default]
    Identity,
    /// An independent seeded permutation per cycle pair.
    Random(u64),
}

/// Layout of a `G_k` member: `k-1` disjoint cycles of length `m = n/(k-1)`,
/// cycle `i` on vertices `i*m .. (i+1)*m`, plus a perfect matching between
/// every pair of cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkSpec {
    pub k: usize,
    pub n: usize,
    pub m: usize,
}

impl GkSpec {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(invalid(format!("G_k needs k >= 2, got {k}")));
        }
        if n < 3 * (k - 1) || n % (k - 1) != 0 {
            return Err(invalid(format!(
                "G_k needs (k-1) | n and n >= 3(k-1); got k={k}, n={n}"
            )));
        }
        Ok(GkSpec { k, n, m: n / (k - 1) })
    }

    pub fn cycle(&self, i: usize) -> std::ops::Range<usize> {
        i * self.m..(i + 1) * self.m
    }

    /// The three smallest legal vertex counts for this `k`.
    pub fn smallest_n(k: usize, count: usize) -> Vec<usize> {
        let step = k - 1;
        (0..count).map(|i| 3 * step + i * step).collect()
    }
}

pub fn build_gk(k: usize, n: usize, pairing: GkPairing) -> Result<Graph> {
    let spec = GkSpec::new(k, n)?;
    let m = spec.m;
    let mut edges = Vec::with_capacity(n * k / 2);
    for i in 0..k - 1 {
        let base = i * m;
        for t in 0..m {
            edges.push((base + t, base + (t + 1) % m));
        }
    }
    let mut rng = match pairing {
        GkPairing::Random(seed) => Some(rng_from(seed, stream::GRAPH)),
        GkPairing::Identity => None,
    };
    for i in 0..k - 1 {
        for j in i + 1..k - 1 {
            let mut perm: Vec<usize> = (0..m).collect();
            if let Some(rng) = rng.as_mut() {
                perm.shuffle(rng);
            }
            for (t, &s) in perm.iter().enumerate() {
                edges.push((i * m + t, j * m + s));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom2(n: usize) -> f64 {
        (n * (n - 1) / 2) as f64
    }

    #[test]
    fn gnp_extremes() {
        let k5 = gen_gnp(GnpParams::new(5, 1.0, 3).unwrap()).unwrap();
        assert_eq!(k5, Graph::complete(5));
        let e7 = gen_gnp(GnpParams::new(7, 0.0, 3).unwrap()).unwrap();
        assert_eq!(e7.edge_count(), 0);
        assert!(GnpParams::new(3, 1.5, 0).is_err());
        assert!(GnpParams::new(0, 0.5, 0).is_err());
    }

    #[test]
    fn gnp_edge_count_within_chernoff_band() {
        let g = gen_gnp(GnpParams::new(10_000, 0.01, 42).unwrap()).unwrap();
        let mean = binom2(10_000) * 0.01;
        let m = g.edge_count() as f64;
        assert!((0.9 * mean..=1.1 * mean).contains(&m), "m={m}, mean={mean}");
    }

    #[test]
    fn gnp_is_reproducible_and_seed_sensitive() {
        let a = gen_gnp(GnpParams::new(300, 0.05, 9).unwrap()).unwrap();
        let b = gen_gnp(GnpParams::new(300, 0.05, 9).unwrap()).unwrap();
        let c = gen_gnp(GnpParams::new(300, 0.05, 10).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn gnp_pairs_are_uniform_over_rows() {
        // Each row of the upper triangle must be reachable; check with p=0.5
        // that the last vertex pair can appear.
        let hits = (0..200)
            .filter(|&s| gen_gnp(GnpParams::new(4, 0.5, s).unwrap()).unwrap().has_edge(2, 3))
            .count();
        assert!((60..140).contains(&hits), "hits={hits}");
    }

    #[test]
    fn bipartite_generation() {
        let k33 = gen_bipartite(6, 1.0, 0).unwrap();
        assert_eq!(k33, BipartiteGraph::complete(3));
        assert_eq!(gen_bipartite(6, 0.0, 0).unwrap().graph().edge_count(), 0);
        assert!(gen_bipartite(7, 0.5, 0).is_err());
        let b = gen_bipartite(2000, 0.05, 7).unwrap();
        let mean = 1e6 * 0.05;
        let m = b.graph().edge_count() as f64;
        assert!((0.9 * mean..=1.1 * mean).contains(&m));
    }

    #[test]
    fn gk_shapes() {
        let g2 = build_gk(2, 8, GkPairing::Identity).unwrap();
        assert_eq!(g2, Graph::cycle(8));
        let g3 = build_gk(3, 12, GkPairing::Identity).unwrap();
        assert!((0..12).all(|v| g3.degree(v) == 3));
        assert_eq!(g3.edge_count(), 18);
        let g5 = build_gk(5, 20, GkPairing::Random(4)).unwrap();
        assert!((0..20).all(|v| g5.degree(v) == 5));
        assert!(build_gk(3, 13, GkPairing::Identity).is_err());
        assert!(build_gk(4, 6, GkPairing::Identity).is_err());
        assert!(build_gk(1, 6, GkPairing::Identity).is_err());
        assert_eq!(GkSpec::smallest_n(4, 3), vec![9, 12, 15]);
    }
}
