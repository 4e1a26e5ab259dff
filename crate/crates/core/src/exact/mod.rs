//! Exact kMST solvers for structured inputs: two edge weights, series-parallel
//! graphs given with a parse tree, and trees.

pub mod sp;
pub mod tree_dp;
pub mod two_weight;

pub use sp::{compose_tables, sp_kmst, Class, CostTable, Rule, SPParseTree};
pub use tree_dp::tree_kmst;
pub use two_weight::two_weight_kmst;
