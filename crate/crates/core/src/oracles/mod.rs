//! Ground-truth verifiers. Strategies never certify their own wins; the
//! harness re-checks every claimed structure with the functions here.

mod connectivity;
mod expander;
mod hamilton;
mod matching;
mod search;

pub use connectivity::{connectivity_verdict, local_connectivity, vertex_connectivity};
pub use expander::{expander_check, recheck_expander_witness, CheckMode, ExpanderParams};
pub use hamilton::{check_hamilton_cycle, check_hamilton_path, posa_ham_path, PosaConfig};
pub use matching::{
    hall_check, is_matching, max_bipartite_matching, max_matching, perfect_matching_verdict,
    BipartiteMatching, HallParams,
};

use serde::{Deserialize, Serialize};

use crate::graph::Vertex;

/// Violating object attached to a failed verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
    Set(Vec<Vertex>),
    Pair(Vec<Vertex>, Vec<Vertex>),
    Cut(Vec<Vertex>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { pass: true, witness: None, detail: String::new() }
    }

    pub fn fail(witness: Witness, detail: impl Into<String>) -> Self {
        Verdict { pass: false, witness: Some(witness), detail: detail.into() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}
