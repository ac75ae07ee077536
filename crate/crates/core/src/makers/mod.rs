//! Fast Maker strategies for the perfect matching, Hamiltonicity and
//! k-connectivity games on random boards.

mod augment;
mod consts;
mod expander;
mod ham;
mod kconn;
mod pairs;
mod paths;
mod pm;
mod stage1;
mod window;

pub use consts::{LogRule, StrategyConstants, Thresholds};
pub use expander::{sparsify, BuildGoal, ExpanderPlan, ExpanderStrategy, PlanStats, PlanStep, SparsifyInput};
pub use ham::{ham_strategy, HamReport, HamStrategy};
pub use kconn::{kconn_strategy, KConnPartition, KConnStrategy, StarStrategy};
pub use pairs::PairPotential;
pub use pm::{pm_bipartite_strategy, pm_strategy, PmStrategy};
pub use stage1::{pick_u0, pick_u0_bipartite};
pub use window::WindowReport;
