//! Maker-Breaker positional games played on the edge set of random graph
//! boards.
//!
//! The crate bundles four layers:
//!
//! * [`graph`]: compact graph types, seeded `G(n,p)` / bipartite generators,
//!   the `G_k` gadget family, a long-directed-path finder and a
//!   pseudo-randomness audit.
//! * [`oracles`]: ground-truth verifiers (maximum matching, Hall conditions,
//!   vertex connectivity, Hamilton cycles, expander checks, and a
//!   rotation-extension Hamilton path finder).
//! * [`engine`], [`box_degree`], [`breakers`]: the biased game referee with
//!   transcripts and replay, the box game with resets and the degree game,
//!   and adversaries (potential-based Breaker, random, degree attacker) plus
//!   an exhaustive game-tree solver for tiny boards.
//! * [`makers`] and [`experiment`]: fast Maker strategies for the perfect
//!   matching, Hamiltonicity and k-connectivity games, and the experiment
//!   harness that plays, certifies and replays them.

pub mod box_degree;
pub mod breakers;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod makers;
pub mod oracles;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Digraph, EdgeId, Graph, Vertex};
