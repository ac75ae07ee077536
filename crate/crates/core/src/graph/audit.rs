//! Pseudo-randomness audit of a `G(n,p)` board with `p = ln^K(n)/n`:
//! degree band (A1), local sparsity of every vertex set (A2) and edge
//! density between and inside large disjoint sets (A3).
//!
//! All hidden constants are fields of [`AuditConfig`]. The (A2)/(A3)
//! quantifiers range over exponentially many sets, so beyond
//! [`EXACT_A2_LIMIT`] vertices the audit samples and adds an adversarial
//! peeling search for (A2).

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};
use crate::error::{invalid, Result};
use crate::oracles::Witness;
use crate::rng::{rng_from, stream};

pub const EXACT_A2_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    /// Exponent `K` in `p = ln^K(n)/n`.
    pub k: f64,
    /// Exponent `alpha` with `1 <= alpha < K` fixing the (A3) set size.
    pub alpha: f64,
    /// Scaling `f`, typically 1 or `(ln ln n)^3`.
    pub f: f64,
    /// Random sets examined by (A2) and set pairs examined by (A3).
    pub sample_budget: usize,
    /// (A1) band is `[a1_low, a1_high] * ln^K(n)`.
    pub a1_low: f64,
    pub a1_high: f64,
    /// (A2) bound is `max(c|U| ln n, c|U|^2 p)`.
    pub a2_const: f64,
    /// (A3) requires at least this fraction of the expected edge count.
    pub a3_const: f64,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            k: 3.0,
            alpha: 1.0,
            f: 1.0,
            sample_budget: 200,
            a1_low: 0.5,
            a1_high: 2.0,
            a2_const: 100.0,
            a3_const: 0.5,
            seed: 0,
        }
    }
}

impl AuditConfig {
    pub fn validate(&self) -> Result<()> {
        if self.alpha < 1.0 || self.alpha >= self.k {
            return Err(invalid(format!(
                "audit needs 1 <= alpha < K, got alpha={} K={}",
                self.alpha, self.k
            )));
        }
        if self.sample_budget == 0 {
            return Err(invalid("audit sample budget must be positive"));
        }
        if self.f < 1.0 {
            return Err(invalid("audit scaling f must be >= 1"));
        }
        Ok(())
    }

    pub fn p(&self, n: usize) -> f64 {
        ((n as f64).ln().powf(self.k) / n as f64).min(1.0)
    }

    /// Size of the (A3) sets, `n / (f ln^alpha n)` rounded down.
    pub fn a3_size(&self, n: usize) -> usize {
        let nf = n as f64;
        (nf / (self.f * nf.ln().powf(self.alpha))).floor() as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub pass: bool,
    pub detail: String,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub a1: AuditCheck,
    pub a2: AuditCheck,
    pub a3: AuditCheck,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.a1.pass && self.a2.pass && self.a3.pass
    }
}

pub fn audit_gnp(g: &Graph, cfg: &AuditConfig) -> Result<AuditReport> {
    cfg.validate()?;
    let n = g.n();
    let s = cfg.a3_size(n);
    if s == 0 || 2 * s > n {
        return Err(invalid(format!(
            "(A3) set size {s} does not fit two disjoint sets into n={n}"
        )));
    }
    Ok(AuditReport {
        a1: check_a1(g, cfg),
        a2: check_a2(g, cfg),
        a3: check_a3(g, cfg, s),
    })
}

fn check_a1(g: &Graph, cfg: &AuditConfig) -> AuditCheck {
    let n = g.n();
    let scale = (n as f64).ln().powf(cfg.k);
    let (lo, hi) = (cfg.a1_low * scale, cfg.a1_high * scale);
    let out = (0..n).find(|&v| {
        let d = g.degree(v) as f64;
        d < lo || d > hi
    });
    let detail = format!(
        "degrees in [{}, {}], band [{lo:.2}, {hi:.2}]",
        g.min_degree(),
        g.max_degree()
    );
    AuditCheck {
        pass: out.is_none(),
        detail,
        witness: out.map(Witness::Vertex),
    }
}

fn a2_bound(cfg: &AuditConfig, n: usize, p: f64, size: usize) -> f64 {
    let u = size as f64;
    (cfg.a2_const * u * (n as f64).ln()).max(cfg.a2_const * u * u * p)
}

fn check_a2(g: &Graph, cfg: &AuditConfig) -> AuditCheck {
    let n = g.n();
    let p = cfg.p(n);
    let violates = |size: usize, edges: usize| edges as f64 > a2_bound(cfg, n, p, size);

    if n <= EXACT_A2_LIMIT {
        let masks: Vec<u32> = g
            .edges()
            .iter()
            .map(|&(u, v)| (1u32 << u) | (1u32 << v))
            .collect();
        for set in 1u32..(1u32 << n) {
            let inside = masks.iter().filter(|&&m| m & set == m).count();
            if violates(set.count_ones() as usize, inside) {
                let members = (0..n).filter(|&v| set >> v & 1 == 1).collect();
                return AuditCheck {
                    pass: false,
                    detail: format!("exact: |E(U)|={inside} over the bound"),
                    witness: Some(Witness::Set(members)),
                };
            }
        }
        return AuditCheck {
            pass: true,
            detail: format!("exact over all {} subsets", (1u64 << n) - 1),
            witness: None,
        };
    }

    if let Some((set, inside)) = peel_for_a2(g, cfg, p) {
        return AuditCheck {
            pass: false,
            detail: format!("peeling: |E(U)|={inside} with |U|={}", set.len()),
            witness: Some(Witness::Set(set)),
        };
    }

    let mut rng = rng_from(cfg.seed, stream::AUDIT);
    let mut mask = vec![false; n];
    for _ in 0..cfg.sample_budget {
        let size = rng.gen_range(1..=n);
        let set = sample(&mut rng, n, size).into_vec();
        for &v in &set {
            mask[v] = true;
        }
        let inside: usize = set
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|&&w| mask[w as usize]).count())
            .sum::<usize>()
            / 2;
        for &v in &set {
            mask[v] = false;
        }
        if violates(size, inside) {
            return AuditCheck {
                pass: false,
                detail: format!("sampled: |E(U)|={inside} with |U|={size}"),
                witness: Some(Witness::Set(set)),
            };
        }
    }
    AuditCheck {
        pass: true,
        detail: format!("peeling chain + {} sampled sets", cfg.sample_budget),
        witness: None,
    }
}

/// Min-degree peeling; every intermediate set is a candidate dense set.
fn peel_for_a2(g: &Graph, cfg: &AuditConfig, p: f64) -> Option<(Vec<Vertex>, usize)> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = g.max_degree();
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut edges_left = g.edge_count();
    let mut alive = n;
    let mut lo = 0;
    while alive > 0 {
        if edges_left as f64 > a2_bound(cfg, n, p, alive) {
            let set: Vec<Vertex> = (0..n).filter(|&v| !removed[v]).collect();
            return Some((set, edges_left));
        }
        let v = loop {
            while buckets[lo].is_empty() {
                lo += 1;
            }
            let v = buckets[lo].pop().unwrap();
            if !removed[v] && deg[v] == lo {
                break v;
            }
        };
        removed[v] = true;
        alive -= 1;
        edges_left -= deg[v];
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !removed[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w);
                lo = lo.min(deg[w]);
            }
        }
    }
    None
}

fn check_a3(g: &Graph, cfg: &AuditConfig, s: usize) -> AuditCheck {
    let n = g.n();
    let p = cfg.p(n);
    let need_cross = cfg.a3_const * (s * s) as f64 * p;
    let need_inner = cfg.a3_const * (s * (s - 1) / 2) as f64 * p;
    let mut rng = rng_from(cfg.seed, stream::AUDIT + 100);
    let mut side = vec![0u8; n];
    let mut min_cross = usize::MAX;
    for _ in 0..cfg.sample_budget {
        let picked = sample(&mut rng, n, 2 * s).into_vec();
        let (u, w) = picked.split_at(s);
        for &v in u {
            side[v] = 1;
        }
        for &v in w {
            side[v] = 2;
        }
        let mut cross = 0usize;
        let mut inner2 = 0usize;
        for &v in u {
            for &x in g.neighbors(v) {
                match side[x as usize] {
                    2 => cross += 1,
                    1 => inner2 += 1,
                    _ => {}
                }
            }
        }
        for &v in &picked {
            side[v] = 0;
        }
        min_cross = min_cross.min(cross);
        let inner = inner2 / 2;
        if (cross as f64) < need_cross || (inner as f64) < need_inner {
            return AuditCheck {
                pass: false,
                detail: format!(
                    "|E(U,W)|={cross} (need {need_cross:.1}), |E(U)|={inner} (need {need_inner:.1}), |U|={s}"
                ),
                witness: Some(Witness::Pair(u.to_vec(), w.to_vec())),
            };
        }
    }
    AuditCheck {
        pass: true,
        detail: format!(
            "{} sampled pairs of size {s}; min |E(U,W)|={min_cross} vs need {need_cross:.1}",
            cfg.sample_budget
        ),
        witness: None,
    }
}
