//! Seeded fixtures shared by the solver benchmarks.

use shortk::exact::SPParseTree;
use shortk::gen::{random_connected_graph, random_convex, random_hu, random_points, random_sp_tree, random_tree, rng, HuPreset};
use shortk::short_trees::HuInstance;
use shortk::{Metric, PointSet2D, WeightedGraph};

const SEED: u64 = 0x5eed;

pub fn graph(n: usize) -> WeightedGraph {
    random_connected_graph(&mut rng(SEED), n, 0.2, 100).expect("fixture graph")
}

pub fn tree(n: usize) -> WeightedGraph {
    random_tree(&mut rng(SEED), n, 100).expect("fixture tree")
}

pub fn points(n: usize, metric: Metric) -> PointSet2D {
    random_points(&mut rng(SEED), n, metric).expect("fixture points")
}

pub fn convex(n: usize) -> PointSet2D {
    random_convex(&mut rng(SEED), n).expect("fixture convex set")
}

pub fn sp(edges: usize) -> SPParseTree {
    random_sp_tree(&mut rng(SEED), edges, 100).expect("fixture parse tree")
}

pub fn hu(n: usize, preset: HuPreset) -> HuInstance {
    random_hu(&mut rng(SEED), n, preset).expect("fixture hu instance")
}
