//! Trees that are short in diameter or in pairwise cost: minimum-diameter
//! k-trees and the polynomial cases of Hu's spanning-tree problems.

pub mod cut_tree;
pub mod diameter;
pub mod hu;

pub use cut_tree::{gomory_hu, min_cut, CutTree};
pub use diameter::{min_diameter_ktree, roof_curve, roof_sweep, roof_sweep_edge, Center, MinDiameterTree, RoofCurve};
pub use hu::{evaluate_hu, min_comm_tree_two_r_zero_c, min_diamcost_tree_uniform_d_two_r, HuCosts, HuInstance};
