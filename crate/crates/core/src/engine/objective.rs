use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Board, Certificate, Side};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::oracles::{check_hamilton_cycle, connectivity_verdict, perfect_matching_verdict, Verdict, Witness};

/// Decides the game. `on_claim` may end it early (hypergraph games);
/// `verify` judges the certificate when Maker declares done.
pub trait Objective {
    fn on_claim(&mut self, _side: Side, _edge: EdgeId, _board: &Board) -> Option<Side> {
        None
    }

    fn verify(&self, board: &Board, cert: Option<&Certificate>) -> Verdict;
}

/// Accepts every declared win; for scripted and exploratory games.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoObjective;

impl Objective for NoObjective {
    fn verify(&self, _board: &Board, _cert: Option<&Certificate>) -> Verdict {
        Verdict::pass()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphGoal {
    PerfectMatching,
    HamiltonCycle,
    Connectivity(usize),
}

/// Certifies graph-game wins with the oracles, using only Maker's edges.
#[derive(Clone, Debug)]
pub struct GraphObjective {
    host: Arc<Graph>,
    goal: GraphGoal,
}

impl GraphObjective {
    pub fn new(host: Arc<Graph>, goal: GraphGoal) -> Self {
        GraphObjective { host, goal }
    }

    fn maker_pair(&self, board: &Board, u: Vertex, v: Vertex) -> bool {
        u < self.host.n()
            && v < self.host.n()
            && self.host.edge_id(u, v).is_some_and(|e| board.is_maker(e))
    }
}

impl Objective for GraphObjective {
    fn verify(&self, board: &Board, cert: Option<&Certificate>) -> Verdict {
        match (self.goal, cert) {
            (GraphGoal::PerfectMatching, Some(Certificate::Matching { pairs })) => {
                if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| !self.maker_pair(board, u, v)) {
                    return Verdict::fail(Witness::Edge(u, v), "matching edge not owned by Maker");
                }
                perfect_matching_verdict(&self.host, pairs)
            }
            (GraphGoal::HamiltonCycle, Some(Certificate::HamiltonCycle { cycle })) => {
                let k = cycle.len();
                for i in 0..k {
                    let (u, v) = (cycle[i], cycle[(i + 1) % k]);
                    if !self.maker_pair(board, u, v) {
                        return Verdict::fail(Witness::Edge(u, v), "cycle edge not owned by Maker");
                    }
                }
                check_hamilton_cycle(&self.host, cycle)
            }
            (GraphGoal::Connectivity(k), Some(Certificate::Connectivity { .. }) | None) => {
                connectivity_verdict(&maker_graph(&self.host, board), k)
            }
            (_, other) => Verdict::fail(
                Witness::Set(Vec::new()),
                format!("certificate {other:?} does not fit goal {:?}", self.goal),
            ),
        }
    }
}

/// Maker's graph on the host's vertex set.
pub fn maker_graph(host: &Graph, board: &Board) -> Graph {
    let mut edges: Vec<(u32, u32)> = (0..host.edge_count() as EdgeId)
        .filter(|&e| board.is_maker(e))
        .map(|e| host.edges()[e as usize])
        .collect();
    edges.sort_unstable();
    Graph::from_sorted_unique(host.n(), edges)
}
