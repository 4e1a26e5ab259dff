//! Worst-case families with explicit witnesses.

use rand::Rng;

use crate::error::Result;
use crate::geometry::{Metric, Point, PointSet2D};
use crate::graph::{Edge, WeightedGraph};
use crate::tree::KTreeSolution;

use super::{rng, square_root_of};

/// Horizontal path on vertices `0..k`: `√k + 1` zero-weight runs joined by
/// `√k` heavy edges. Each run's first vertex carries a chain of `k` light
/// edges.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig2 {
    pub graph: WeightedGraph,
    pub known_opt: f64,
    /// The horizontal path.
    pub witness: KTreeSolution,
    pub heavy: f64,
    pub light: f64,
}

pub fn gen_fig2(k: usize, opt_scale: f64) -> Result<Fig2> {
    let q = square_root_of(k)?;
    if !(opt_scale > 0.0 && opt_scale.is_finite()) {
        crate::error::bail!(Argument, "opt_scale must be positive and finite");
    }
    let heavy = opt_scale / q as f64;
    let light = opt_scale / (4 * q) as f64;
    let runs = q + 1;
    let mut starts = Vec::with_capacity(runs);
    let mut edges = Vec::new();
    let mut v = 0;
    for r in 0..runs {
        let len = k / runs + usize::from(r < k % runs);
        starts.push(v);
        if r > 0 {
            edges.push((v - 1, v, heavy));
        }
        for i in v + 1..v + len {
            edges.push((i - 1, i, 0.0));
        }
        v += len;
    }
    let path: Vec<Edge> = edges.iter().map(|&(a, b, w)| Edge::new(a, b, w)).collect();
    let mut next = k;
    for &s in &starts {
        let mut prev = s;
        for _ in 0..k {
            edges.push((prev, next, light));
            prev = next;
            next += 1;
        }
    }
    let graph = WeightedGraph::new(next, edges)?;
    let witness = KTreeSolution::from_edges(0..k, path, "fig2-witness")?;
    Ok(Fig2 { graph, known_opt: witness.cost, witness, heavy, light })
}

/// `√k` tight clusters on the diagonal cells of a `√k x √k` grid over a
/// side-`σ` square, and `√k` cells of uniformly spread points.
#[derive(Debug, Clone, PartialEq)]
pub struct Fig4 {
    pub points: PointSet2D,
    pub known_opt_bound: f64,
    pub cell_side: f64,
    /// Indices of the clustered points, one block of `√k` per diagonal cell.
    pub diagonal: Vec<usize>,
    /// Euclidean MST of the clustered points.
    pub witness: KTreeSolution,
}

pub fn gen_fig4(k: usize, sigma: f64, metric: Metric, seed: u64) -> Result<Fig4> {
    let q = square_root_of(k)?;
    if !(sigma > 0.0 && sigma.is_finite()) {
        crate::error::bail!(Argument, "sigma must be positive and finite");
    }
    let mut rng = rng(seed);
    let cell = sigma / q as f64;
    let radius = sigma / (1000 * k) as f64;
    let mut points = Vec::with_capacity(2 * k);
    for i in 0..q {
        let c = Point::new((i as f64 + 0.5) * cell, (i as f64 + 0.5) * cell);
        for j in 0..q {
            let t = std::f64::consts::TAU * j as f64 / q as f64;
            points.push(Point::new(c.x + radius * t.cos(), c.y + radius * t.sin()));
        }
    }
    for i in 0..q {
        let (col, row) = (i as f64, ((i + q / 2) % q) as f64);
        for _ in 0..q {
            let (u, v): (f64, f64) = (rng.gen(), rng.gen());
            points.push(Point::new((col + u) * cell, (row + v) * cell));
        }
    }
    let points = PointSet2D::new(points, metric)?;
    let diagonal: Vec<usize> = (0..k).collect();
    let euclid = PointSet2D { metric: Metric::Euclidean, ..points.clone() };
    let witness = euclid.mst_of(&diagonal, "fig4-witness");
    Ok(Fig4 { points, known_opt_bound: 2.0 * sigma, cell_side: cell, diagonal, witness })
}
