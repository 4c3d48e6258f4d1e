//! Ordered tree edit distance by decomposition strategies: Shasha-Zhang,
//! Klein, and the cubic heavy-path recursion, with edit scripts, a
//! brute-force oracle and subproblem instrumentation.

pub mod algo;
pub mod cli;
pub mod cost;
pub mod forest;
pub mod instrument;
pub mod io;

pub use algo::{
    apply_script, distance_dmrw, distance_klein, distance_strategy, distance_sz, edit_script, oracle_distance,
    Algorithm, Computation, DistanceResult, EditOp, EditScript,
};
pub use cost::CostModel;
pub use forest::{build_index, Label, NodeId, Subforest, Tree, TreeIndex};
pub use instrument::RunStats;
