//! Breaker strategies: the potential-function Breaker for explicit
//! hypergraphs, graph-aware heuristics for large boards, and an exhaustive
//! game-tree solver for tiny boards.

mod graph_breakers;
mod hypergraph;
mod solver;

pub use graph_breakers::{degree_attacker_move, random_breaker_move, DegreeAttacker, RandomBreaker};
pub use hypergraph::{
    potential_breaker_move, Hypergraph, HypergraphObjective, PotentialBreaker, PotentialState,
};
pub use solver::{best_response_wins, GameTreeSolver, SolverMaker};

use serde::{Deserialize, Serialize};

/// Named roster entries for the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BreakerKind {
    Random,
    DegreeAttacker,
}

impl BreakerKind {
    pub fn label(self) -> &'static str {
        match self {
            BreakerKind::Random => "random",
            BreakerKind::DegreeAttacker => "degree-attacker",
        }
    }
}

impl std::str::FromStr for BreakerKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "random" => Ok(BreakerKind::Random),
            "degree-attacker" | "attacker" => Ok(BreakerKind::DegreeAttacker),
            _ => Err(crate::error::invalid(format!("unknown breaker `{s}`"))),
        }
    }
}
