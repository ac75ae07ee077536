use serde::{Deserialize, Serialize};

use crate::box_degree::EdgePick;
use crate::error::{invalid, Result};

/// `scale * ln(n)^power`; the building block of every size threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogRule {
    pub scale: f64,
    pub power: f64,
}

impl LogRule {
    pub const fn new(scale: f64, power: f64) -> Self {
        LogRule { scale, power }
    }

    pub fn eval(&self, n: usize) -> f64 {
        self.scale * (n.max(3) as f64).ln().powf(self.power)
    }
}

/// Tunable constants of the Maker strategies. Every field has a desk-scale
/// default; `asymptotic_regime` switches the size thresholds to the asymptotic
/// formulas in terms of `k` (useful for symbolic audits, hopeless in play).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StrategyConstants {
    /// Exponent `K` of the edge probability `ln^K n / n`.
    pub k: f64,
    pub asymptotic_regime: bool,
    /// `U_0` must satisfy `d(v, U_0) >= c1 |U_0| p` for every vertex.
    pub c1: f64,
    /// `A_2` holds the residual vertices with free degree at least
    /// `c2` times the average free degree.
    pub c2: f64,
    /// `|U_0| / n` for the matching games.
    pub pm_u0: LogRule,
    /// `|U_0| / n` for the Hamiltonicity game.
    pub ham_u0: LogRule,
    /// Stage I stops with this many times `|U_0|` vertices still unmatched.
    pub leftover: f64,
    /// Every `floor(cadence)`-th Maker move belongs to the degree game.
    pub cadence: LogRule,
    /// Pending Breaker weight a vertex needs before the interleaved degree
    /// game answers it.
    pub lazy_weight: LogRule,
    /// Path count that ends the merging stage, as a fraction of `n`.
    pub m1_target: LogRule,
    /// Paths with at least `retire_ratio * n / target` vertices retire.
    pub retire_ratio: f64,
    /// Window width at each path end.
    pub window: LogRule,
    /// Pair size of the window game, as a fraction of the path count.
    pub pair_m: LogRule,
    /// Virtual Breaker bias of the window game.
    pub window_bias: LogRule,
    /// The spliced path may miss at most this fraction of `n` vertices of
    /// the Stage I matching.
    pub long_path_slack: LogRule,
    /// Overrides for the expander targets (default `|V_H| / ln |V_H|` and
    /// `ln ln |V_H|`).
    pub expander_r: Option<usize>,
    pub expander_c: Option<f64>,
    pub pair_samples: usize,
    /// Use every pair instead of a sample when there are at most this many.
    pub all_pairs_limit: usize,
    /// Pair moves are skipped while the estimated potential is below this.
    pub yield_eps: f64,
    /// For matching and path goals, play pair moves only when the degree
    /// game and the completion step have nothing to claim, instead of on
    /// every other move.
    pub lazy_pairs: bool,
    /// Expander builder claim budget per residual vertex.
    pub expander_budget: f64,
    /// Sparsification keeps `max(1/ln n, rho_degree / avg degree)` of `H`.
    pub rho_degree: f64,
    pub sparsify_attempts: usize,
    pub u0_attempts: usize,
    /// `U_0` is enlarged until every vertex expects at least
    /// `u0_cover * ln n` neighbours in it.
    pub u0_cover: f64,
    pub pick: EdgePick,
    pub posa_budget: usize,
    /// Random DFS restarts when searching the auxiliary digraph.
    pub dpath_restarts: usize,
}

impl Default for StrategyConstants {
    fn default() -> Self {
        StrategyConstants {
            k: 3.0,
            asymptotic_regime: false,
            c1: 0.12,
            c2: 0.25,
            pm_u0: LogRule::new(1.0, -2.0),
            ham_u0: LogRule::new(1.0, -2.0),
            leftover: 0.5,
            cadence: LogRule::new(1.0, 1.0),
            lazy_weight: LogRule::new(1.0, 1.0),
            m1_target: LogRule::new(1.0, -2.5),
            retire_ratio: 10.0,
            window: LogRule::new(0.5, 1.0),
            pair_m: LogRule::new(1.0, -1.0),
            window_bias: LogRule::new(1.0, 1.0),
            long_path_slack: LogRule::new(4.0, -2.0),
            expander_r: None,
            expander_c: None,
            pair_samples: 512,
            all_pairs_limit: 65536,
            yield_eps: 1e-3,
            lazy_pairs: true,
            expander_budget: 4.0,
            rho_degree: 40.0,
            sparsify_attempts: 10,
            u0_attempts: 100,
            u0_cover: 1.2,
            pick: EdgePick::LeastLoaded,
            posa_budget: 50,
            dpath_restarts: 32,
        }
    }
}

impl StrategyConstants {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("k", self.k),
            ("c1", self.c1),
            ("c2", self.c2),
            ("leftover", self.leftover),
            ("retire_ratio", self.retire_ratio),
            ("yield_eps", self.yield_eps),
            ("expander_budget", self.expander_budget),
            ("rho_degree", self.rho_degree),
        ];
        if !(self.u0_cover >= 0.0 && self.u0_cover.is_finite()) {
            return Err(invalid(format!("constant u0_cover must be non-negative, got {}", self.u0_cover)));
        }
        if let Some((name, v)) = positive.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
            return Err(invalid(format!("constant {name} must be positive, got {v}")));
        }
        let rules = [
            ("pm_u0", self.pm_u0),
            ("ham_u0", self.ham_u0),
            ("cadence", self.cadence),
            ("lazy_weight", self.lazy_weight),
            ("m1_target", self.m1_target),
            ("window", self.window),
            ("pair_m", self.pair_m),
            ("window_bias", self.window_bias),
            ("long_path_slack", self.long_path_slack),
        ];
        if let Some((name, _)) = rules.iter().find(|(_, r)| !(r.scale > 0.0 && r.power.is_finite())) {
            return Err(invalid(format!("rule {name} needs a positive scale")));
        }
        if self.pair_samples == 0 || self.sparsify_attempts == 0 || self.u0_attempts == 0 {
            return Err(invalid("sample and attempt counts must be positive"));
        }
        if self.expander_c.is_some_and(|c| c <= 0.0) || self.expander_r == Some(0) {
            return Err(invalid("expander overrides must be positive"));
        }
        Ok(())
    }

    /// Thresholds of the matching games on `n` vertices.
    pub fn pm_thresholds(&self, n: usize) -> Thresholds {
        let u0 = if self.asymptotic_regime { LogRule::new(1.0, -4.0) } else { self.pm_u0 };
        let leftover = if self.asymptotic_regime { 1.0 } else { self.leftover };
        self.thresholds(n, u0, leftover)
    }

    /// Thresholds of the Hamiltonicity game on `n` vertices.
    pub fn ham_thresholds(&self, n: usize) -> Thresholds {
        let u0 = if self.asymptotic_regime { LogRule::new(0.1, -4.0) } else { self.ham_u0 };
        // a Stage I matching of n/2 - n/(9 ln^4 n) leaves 11/9 |U_0| vertices over
        let leftover = if self.asymptotic_regime { 11.0 / 9.0 } else { self.leftover };
        self.thresholds(n, u0, leftover)
    }

    fn thresholds(&self, n: usize, u0_rule: LogRule, leftover_ratio: f64) -> Thresholds {
        let ln = (n.max(3) as f64).ln();
        let k = self.k;
        let u0_size = ((u0_rule.eval(n) * n as f64).round() as usize).clamp(1, n);
        let leftover = (leftover_ratio * u0_size as f64).round() as usize;
        let stage1_matching = n.saturating_sub(u0_size + leftover) / 2;
        let (m1_target, retire_len, window, pair_m, window_bias, slack) = if self.asymptotic_regime {
            let t = (n as f64 / ln.powf(k / 3.0)).floor();
            (
                t,
                10.0 * ln.powf(k / 3.0),
                ln.powf(k / 4.0),
                n as f64 / ln.powf(k / 2.0),
                ln.powf(0.9 * k),
                n as f64 / ln.powi(4),
            )
        } else {
            let t = (self.m1_target.eval(n) * n as f64).floor();
            (
                t,
                self.retire_ratio * n as f64 / t.max(1.0),
                self.window.eval(n),
                t * self.pair_m.eval(n),
                self.window_bias.eval(n),
                self.long_path_slack.eval(n) * n as f64,
            )
        };
        let window = (window.round() as usize).max(2);
        Thresholds {
            n,
            u0_size,
            stage1_matching,
            cadence: (self.cadence.eval(n).floor() as usize).max(1),
            lazy_weight: (self.lazy_weight.eval(n).ceil() as u32).max(1),
            m1_target: (m1_target as usize).max(1),
            retire_len: (retire_len.ceil() as usize).max(3 * window + 1),
            window,
            discard_len: 3 * window,
            pair_m: (pair_m.round() as usize).max(1),
            window_bias: (window_bias.round() as usize).max(1),
            long_path_min: n.saturating_sub(slack.floor() as usize),
            long_path_slack: slack.floor() as usize,
            rho_floor: if self.asymptotic_regime { ln.powf(7.0 - k).min(1.0) } else { 1.0 / ln },
        }
    }
}

/// Integer thresholds resolved for one board size; embedded in transcripts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub n: usize,
    pub u0_size: usize,
    /// `|M_0|` at which Stage I ends.
    pub stage1_matching: usize,
    pub cadence: usize,
    pub lazy_weight: u32,
    pub m1_target: usize,
    /// Vertex count at which a path retires.
    pub retire_len: usize,
    pub window: usize,
    /// Paths with at most this many vertices are discarded before splicing.
    pub discard_len: usize,
    pub pair_m: usize,
    pub window_bias: usize,
    pub long_path_min: usize,
    /// Vertices of the matching the spliced path may lose; with an enlarged
    /// reserve the path must reach `2 |M_0| - long_path_slack`.
    pub long_path_slack: usize,
    /// Smallest sparsification rate.
    pub rho_floor: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn desk_thresholds_are_consistent() {
        let c = StrategyConstants::default();
        c.validate().unwrap();
        for n in [12, 100, 1500, 5000] {
            for t in [c.pm_thresholds(n), c.ham_thresholds(n)] {
                assert!(t.u0_size >= 1 && t.cadence >= 1 && t.m1_target >= 1);
                assert!(t.window * 3 < t.retire_len);
                assert!(2 * t.stage1_matching + t.u0_size <= n);
            }
        }
        let t = c.ham_thresholds(5000);
        assert_eq!(t.cadence, 8);
        assert_eq!(t.u0_size, 69);
        assert_eq!(t.window, 4);
    }

    #[test]
    fn json_roundtrip_with_partial_override() {
        let c: StrategyConstants = serde_json::from_str(r#"{"c1": 0.3, "pair_samples": 64}"#).unwrap();
        assert_eq!(c.pair_samples, 64);
        assert_eq!(c.window, StrategyConstants::default().window);
        let back: StrategyConstants = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<StrategyConstants>(r#"{"nope": 1}"#).is_err());
    }

    #[test]
    fn rejects_bad_constants() {
        let c = StrategyConstants { c1: 0.0, ..Default::default() };
        assert!(c.validate().is_err());
        let c = StrategyConstants { pair_samples: 0, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn asymptotic_regime_is_degenerate_at_desk_scale() {
        let c = StrategyConstants { asymptotic_regime: true, k: 13.0, ..Default::default() };
        let t = c.pm_thresholds(5000);
        assert_eq!(t.u0_size, 1);
        assert!(t.window > 100);
    }
}
