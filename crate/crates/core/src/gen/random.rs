//! Seeded random instances. Weights are small integers so that exact
//! solvers and oracles can be compared without rounding noise.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{bail, Result};
use crate::exact::SPParseTree;
use crate::geometry::{convex_hull, cross, Metric, Point, PointSet2D};
use crate::graph::{DistanceMatrix, WeightedGraph};
use crate::short_trees::HuInstance;

use super::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    Graph,
    Tree,
    TwoWeight,
    Points,
    SpParse,
    Convex,
    Circle,
    Hu,
}

impl std::str::FromStr for RandomKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "graph" => RandomKind::Graph,
            "tree" => RandomKind::Tree,
            "two-weight" => RandomKind::TwoWeight,
            "points" => RandomKind::Points,
            "sp-parse" => RandomKind::SpParse,
            "convex" => RandomKind::Convex,
            "circle" => RandomKind::Circle,
            "hu" => RandomKind::Hu,
            other => bail!(Parse, "unknown random kind '{other}'"),
        })
    }
}

/// Shapes of the distance and requirement values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuPreset {
    /// Arbitrary `r`, uniform `d`.
    Row1,
    /// Uniform `r`, arbitrary `d`.
    Row2,
    /// `r ∈ {a, b}`, `d ∈ {0, c}`.
    Row3,
    /// `r ∈ {a, b}`, uniform `d`.
    Row3Uniform,
    /// `r ∈ {a, 4a}`, `d ∈ {c, d}`.
    Row4,
}

impl std::str::FromStr for HuPreset {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "1" | "row1" => HuPreset::Row1,
            "2" | "row2" => HuPreset::Row2,
            "3" | "row3" => HuPreset::Row3,
            "3u" | "row3-uniform" => HuPreset::Row3Uniform,
            "4" | "row4" => HuPreset::Row4,
            other => bail!(Parse, "unknown hu preset '{other}'"),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    /// Vertices, points, or edges for `sp-parse`.
    pub n: usize,
    /// Probability of each non-tree edge.
    pub density: f64,
    /// Integer weights are drawn from `1..=max_weight`.
    pub max_weight: u32,
    pub metric: Metric,
    pub preset: HuPreset,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { n: 8, density: 0.3, max_weight: 10, metric: Metric::Euclidean, preset: HuPreset::Row3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RandomInstance {
    Graph(WeightedGraph),
    Points(PointSet2D),
    SpParse(SPParseTree),
    Hu(HuInstance),
}

pub fn gen_random(kind: RandomKind, params: &RandomParams, seed: u64) -> Result<RandomInstance> {
    let mut rng = rng(seed);
    let p = params;
    if !(0.0..=1.0).contains(&p.density) {
        bail!(Argument, "density must lie in [0, 1]");
    }
    if p.max_weight == 0 {
        bail!(Argument, "max_weight must be positive");
    }
    Ok(match kind {
        RandomKind::Graph => RandomInstance::Graph(random_connected_graph(&mut rng, p.n, p.density, p.max_weight)?),
        RandomKind::Tree => RandomInstance::Graph(random_tree(&mut rng, p.n, p.max_weight)?),
        RandomKind::TwoWeight => RandomInstance::Graph(random_two_weight(&mut rng, p.n, p.density, p.max_weight)?),
        RandomKind::Points => RandomInstance::Points(random_points(&mut rng, p.n, p.metric)?),
        RandomKind::SpParse => RandomInstance::SpParse(random_sp_tree(&mut rng, p.n, p.max_weight)?),
        RandomKind::Convex => RandomInstance::Points(random_convex(&mut rng, p.n)?),
        RandomKind::Circle => RandomInstance::Points(random_circle(&mut rng, p.n)?),
        RandomKind::Hu => RandomInstance::Hu(random_hu(&mut rng, p.n, p.preset)?),
    })
}

fn weight(rng: &mut ChaCha8Rng, max_weight: u32) -> f64 {
    rng.gen_range(1..=max_weight.max(1)) as f64
}

/// Random spanning tree plus each remaining pair with probability `density`.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, density: f64, max_weight: u32) -> Result<WeightedGraph> {
    if n == 0 {
        bail!(Argument, "graph needs at least one vertex");
    }
    let mut edges = Vec::new();
    let mut tree = vec![false; n * n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        tree[u * n + v] = true;
        edges.push((u, v, weight(rng, max_weight)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !tree[u * n + v] && rng.gen_bool(density) {
                edges.push((u, v, weight(rng, max_weight)));
            }
        }
    }
    WeightedGraph::new(n, edges)
}

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize, max_weight: u32) -> Result<WeightedGraph> {
    random_connected_graph(rng, n, 0.0, max_weight)
}

/// Complete graph whose pairs are light (weight 1) with probability
/// `density` and heavy (a weight in `2..=max(2, max_weight)`) otherwise.
pub fn random_two_weight(rng: &mut ChaCha8Rng, n: usize, density: f64, max_weight: u32) -> Result<WeightedGraph> {
    if n == 0 {
        bail!(Argument, "graph needs at least one vertex");
    }
    let heavy = rng.gen_range(2..=max_weight.max(2)) as f64;
    WeightedGraph::complete(n, |_, _| if rng.gen_bool(density) { 1.0 } else { heavy })
}

fn coord(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0..=1000) as f64 / 10.0
}

/// Points on a 0.1 lattice in `[0, 100]²`.
pub fn random_points(rng: &mut ChaCha8Rng, n: usize, metric: Metric) -> Result<PointSet2D> {
    if n == 0 {
        bail!(Argument, "point set needs at least one point");
    }
    PointSet2D::new((0..n).map(|_| Point::new(coord(rng), coord(rng))).collect(), metric)
}

/// Points on a randomly scaled ellipse, resampled until no three are
/// nearly collinear.
pub fn random_convex(rng: &mut ChaCha8Rng, n: usize) -> Result<PointSet2D> {
    if n < 3 {
        bail!(Argument, "convex position needs at least 3 points, got {n}");
    }
    for _ in 0..1000 {
        let (a, b) = (rng.gen_range(10.0..50.0), rng.gen_range(10.0..50.0));
        let (cx, cy) = (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0));
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let mut pts: Vec<Point> = angles.iter().map(|t| Point::new(cx + a * t.cos(), cy + b * t.sin())).collect();
        let flat = (0..n).any(|i| cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]).abs() < 1e-3);
        if !flat && convex_hull(&pts).len() == n {
            pts.shuffle(rng);
            return PointSet2D::new(pts, Metric::Euclidean);
        }
    }
    bail!(Argument, "could not place {n} points in strictly convex position")
}

/// Concyclic points with no two nearly coincident or nearly diametral.
pub fn random_circle(rng: &mut ChaCha8Rng, n: usize) -> Result<PointSet2D> {
    if n < 3 {
        bail!(Argument, "circle instance needs at least 3 points, got {n}");
    }
    let gap = 1e-2;
    for _ in 0..1000 {
        let radius = rng.gen_range(10.0..50.0);
        let (cx, cy) = (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0));
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let bad = (0..n).any(|i| {
            (i + 1..n).any(|j| {
                let d = angles[j] - angles[i];
                d < gap || std::f64::consts::TAU - d < gap || (d - std::f64::consts::PI).abs() < gap
            })
        });
        if !bad {
            let mut pts: Vec<Point> = angles.iter().map(|t| Point::new(cx + radius * t.cos(), cy + radius * t.sin())).collect();
            pts.shuffle(rng);
            return PointSet2D::new(pts, Metric::Euclidean);
        }
    }
    bail!(Argument, "could not place {n} points on a circle without near-diametral pairs")
}

/// Series-parallel parse tree with `m` edges between terminals 0 and 1.
/// The right part of every parallel node is a series node, so no two edges
/// share both endpoints.
pub fn random_sp_tree(rng: &mut ChaCha8Rng, m: usize, max_weight: u32) -> Result<SPParseTree> {
    if m == 0 {
        bail!(Argument, "parse tree needs at least one edge");
    }
    let mut next = 2;
    let t = build_sp(rng, 0, 1, m, max_weight, &mut next);
    t.validate()?;
    Ok(t)
}

fn build_sp(rng: &mut ChaCha8Rng, s: usize, t: usize, m: usize, max_weight: u32, next: &mut usize) -> SPParseTree {
    if m == 1 {
        return SPParseTree::edge(s, t, weight(rng, max_weight));
    }
    let series = |rng: &mut ChaCha8Rng, m: usize, next: &mut usize| {
        let mid = *next;
        *next += 1;
        let m1 = rng.gen_range(1..m);
        let a = build_sp(rng, s, mid, m1, max_weight, next);
        let b = build_sp(rng, mid, t, m - m1, max_weight, next);
        SPParseTree::series(a, b)
    };
    if m >= 3 && rng.gen_bool(0.4) {
        let m2 = rng.gen_range(2..m);
        let left = build_sp(rng, s, t, m - m2, max_weight, next);
        let right = series(rng, m2, next);
        SPParseTree::parallel(left, right)
    } else {
        series(rng, m, next)
    }
}

pub fn random_hu(rng: &mut ChaCha8Rng, n: usize, preset: HuPreset) -> Result<HuInstance> {
    if n == 0 {
        bail!(Argument, "instance needs at least one vertex");
    }
    let two = |rng: &mut ChaCha8Rng| {
        let a = rng.gen_range(1..=5) as f64;
        let b = loop {
            let b = rng.gen_range(1..=5) as f64;
            if b != a {
                break b;
            }
        };
        (a, b)
    };
    let (d, r) = match preset {
        HuPreset::Row1 => {
            let c = rng.gen_range(1..=5) as f64;
            let r = DistanceMatrix::from_fn(n, |_, _| rng.gen_range(0..=9) as f64)?;
            (DistanceMatrix::from_fn(n, |_, _| c)?, r)
        }
        HuPreset::Row2 => {
            let a = rng.gen_range(1..=5) as f64;
            let d = DistanceMatrix::from_fn(n, |_, _| rng.gen_range(1..=9) as f64)?;
            (d, DistanceMatrix::from_fn(n, |_, _| a)?)
        }
        HuPreset::Row3 => {
            let (a, b) = two(rng);
            let c = rng.gen_range(1..=5) as f64;
            let d = DistanceMatrix::from_fn(n, |_, _| if rng.gen_bool(0.3) { 0.0 } else { c })?;
            (d, DistanceMatrix::from_fn(n, |_, _| *[a, b].choose(rng).expect("nonempty"))?)
        }
        HuPreset::Row3Uniform => {
            let (a, b) = two(rng);
            let c = rng.gen_range(1..=5) as f64;
            let r = DistanceMatrix::from_fn(n, |_, _| if rng.gen_bool(0.5) { a } else { b })?;
            (DistanceMatrix::from_fn(n, |_, _| c)?, r)
        }
        HuPreset::Row4 => {
            let a = rng.gen_range(1..=3) as f64;
            let c = rng.gen_range(1..=3) as f64;
            let far = c + rng.gen_range(1..=5) as f64;
            let d = DistanceMatrix::from_fn(n, |_, _| if rng.gen_bool(0.5) { c } else { far })?;
            let r = DistanceMatrix::from_fn(n, |_, _| if rng.gen_bool(0.5) { a } else { 4.0 * a })?;
            (d, r)
        }
    };
    HuInstance::new(d, r)
}
