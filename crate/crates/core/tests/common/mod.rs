#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use shortk::gen::rng;
use shortk::geometry::{convex_hull, segments_cross};
use shortk::graph::WeightedGraph;
use shortk::oracles::{oracle_kmst, OracleBudget};
use shortk::{approx_eq, KTreeSolution, PointSet2D};

pub fn budget() -> OracleBudget {
    OracleBudget::default()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    rng(seed)
}

/// Connected graph with `lo..=hi` vertices and a random density.
pub fn graph(seed: u64, lo: usize, hi: usize, max_weight: u32) -> WeightedGraph {
    let mut r = seeded(seed);
    let n = r.gen_range(lo..=hi);
    let density = r.gen_range(0.1..0.6);
    shortk::gen::random_connected_graph(&mut r, n, density, max_weight).unwrap()
}

/// Exact kMST cost of a point set under its own metric.
pub fn point_opt(ps: &PointSet2D, k: usize) -> f64 {
    oracle_kmst(&ps.complete_graph(), k, None, &budget()).unwrap().cost
}

pub fn close(a: f64, b: f64) -> bool {
    approx_eq(a, b)
}

/// `value <= bound` within the shared relative tolerance.
pub fn within(value: f64, bound: f64) -> bool {
    value <= bound || approx_eq(value, bound)
}

/// No two tree segments cross.
pub fn non_crossing(ps: &PointSet2D, t: &KTreeSolution) -> bool {
    let p = &ps.points;
    t.edges.iter().enumerate().all(|(i, a)| {
        t.edges[i + 1..].iter().all(|b| !segments_cross(p[a.u], p[a.v], p[b.u], p[b.v]))
    })
}

/// Vertex order along a path-shaped tree, or `None` if it is not a path.
pub fn path_order(t: &KTreeSolution) -> Option<Vec<usize>> {
    if t.size() == 1 {
        return Some(t.vertices.clone());
    }
    if t.max_degree() > 2 {
        return None;
    }
    let nbrs = |v: usize| t.edges.iter().filter(move |e| e.u == v || e.v == v).map(move |e| e.other(v));
    let start = *t.vertices.iter().find(|&&v| nbrs(v).count() == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = nbrs(cur).find(|&x| x != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == t.size()).then_some(order)
}

/// The path visits its vertices in the cyclic boundary order of their hull.
pub fn circular_order(ps: &PointSet2D, t: &KTreeSolution) -> bool {
    let Some(order) = path_order(t) else { return false };
    let m = order.len();
    if m <= 3 {
        return true;
    }
    let sub: Vec<_> = order.iter().map(|&v| ps.points[v]).collect();
    let hull = convex_hull(&sub);
    if hull.len() != m {
        return false;
    }
    let pos = hull.iter().position(|&h| h == 0).unwrap();
    let step = |d: usize| (0..m).all(|i| hull[(pos + i * d) % m] == i);
    step(1) || step(m - 1)
}

/// Minimum `s`-`t` cut by enumerating all vertex bipartitions.
pub fn brute_min_cut(g: &WeightedGraph, s: usize, t: usize) -> f64 {
    let n = g.vertex_count();
    let mut best = f64::INFINITY;
    for mask in 0u32..1 << n {
        if mask >> s & 1 == 1 && mask >> t & 1 == 0 {
            let cut: f64 = g.edges().iter().filter(|e| (mask >> e.u & 1) != (mask >> e.v & 1)).map(|e| e.w).sum();
            best = best.min(cut);
        }
    }
    best
}

/// Whether `g` has an independent set of size `k`.
pub fn has_independent_set(g: &WeightedGraph, k: usize) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).any(|mask| {
        mask.count_ones() as usize == k
            && g.edges().iter().all(|e| mask >> e.u & 1 == 0 || mask >> e.v & 1 == 0)
    })
}

/// Graph on `n` vertices whose unit edges are the set bits of `mask` over
/// the pairs `i < j` in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u32) -> WeightedGraph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &(i, j))| (i, j, 1.0));
    WeightedGraph::new(n, edges.collect::<Vec<_>>()).unwrap()
}
