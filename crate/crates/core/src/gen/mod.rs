//! Instance generators: hardness gadgets with witness translators,
//! worst-case families, and seeded random instances.

mod families;
mod random;
mod reductions;

pub use families::{gen_fig2, gen_fig4, Fig2, Fig4};
pub use random::{
    gen_random, random_circle, random_connected_graph, random_convex, random_hu, random_points, random_sp_tree,
    random_tree, random_two_weight, HuPreset, RandomInstance, RandomKind, RandomParams,
};
pub use reductions::{
    gen_3sat_diamcost, gen_is_to_comm_ktree, gen_steiner_to_kmst, min_steiner_edges, oracle_comm_ktree, Cnf,
    IsReduction, ReductionCertificate, SatParams, SatReduction, SteinerReduction, SteinerWeights,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Family name, its parameters and a seed. Equal specs give equal instances.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub family: String,
    pub params: Vec<(String, String)>,
    pub seed: u64,
}

impl GenSpec {
    pub fn rng(&self) -> ChaCha8Rng {
        rng(self.seed)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `√k` when `k` is a perfect square at least 4.
pub(crate) fn square_root_of(k: usize) -> crate::Result<usize> {
    let q = crate::merge_collect::ceil_sqrt(k);
    if k < 4 || q * q != k {
        crate::error::bail!(Argument, "k = {k} must be a perfect square of at least 4");
    }
    Ok(q)
}
