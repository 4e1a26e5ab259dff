//! Spanning-tree solvers for k-node trees and low-diameter trees.
//!
//! The crate covers approximate and exact k-node minimum spanning trees
//! (on weighted graphs, planar point sets, series-parallel graphs, trees
//! and convex point sets), minimum-diameter k-trees, and minimum
//! communication / diameter-cost spanning trees under structured
//! distance and requirement values. Every solver has a brute-force
//! counterpart in [`oracles`] and the hardness gadgets and worst-case
//! families live in [`gen`].

pub mod error;
pub mod graph;
pub mod tree;
pub mod geometry;
pub mod merge_collect;
pub mod plane;
pub mod exact;
pub mod convex;
pub mod short_trees;
pub mod oracles;
pub mod gen;
pub mod io;

pub use error::{Error, Result};
pub use geometry::{Metric, Point, PointSet2D};
pub use graph::{DistanceMatrix, Edge, WeightedGraph};
pub use tree::KTreeSolution;

/// Relative tolerance used by equality checks on costs.
pub const REL_TOL: f64 = 1e-9;

/// `a == b` within [`REL_TOL`] relative tolerance (absolute near zero).
pub fn approx_eq(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs()).max(1.0);
    (a - b).abs() <= REL_TOL * scale
}
