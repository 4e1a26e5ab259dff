//! Planar points, metrics and the few geometric predicates the solvers need.

use crate::error::{bail, Result};
use crate::graph::{Edge, WeightedGraph};
use crate::tree::KTreeSolution;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn euclid(self, o: Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn manhattan(self, o: Point) -> f64 {
        (self.x - o.x).abs() + (self.y - o.y).abs()
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new((self.x + o.x) / 2.0, (self.y + o.y) / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Euclidean,
    Rectilinear,
}

impl Metric {
    pub fn dist(self, a: Point, b: Point) -> f64 {
        match self {
            Metric::Euclidean => a.euclid(b),
            Metric::Rectilinear => a.manhattan(b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Rectilinear => "rectilinear",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "rectilinear" => Ok(Metric::Rectilinear),
            other => bail!(Parse, "unknown metric '{other}'"),
        }
    }
}

/// Points in the plane under a fixed metric. Duplicates are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet2D {
    pub points: Vec<Point>,
    pub metric: Metric,
}

impl PointSet2D {
    pub fn new(points: Vec<Point>, metric: Metric) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
            bail!(Argument, "non-finite coordinate ({}, {})", p.x, p.y);
        }
        Ok(PointSet2D { points, metric })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.metric.dist(self.points[i], self.points[j])
    }

    /// Complete graph on the points under the set's metric.
    pub fn complete_graph(&self) -> WeightedGraph {
        WeightedGraph::complete(self.len(), |i, j| self.dist(i, j)).expect("finite distances")
    }

    /// Minimum spanning tree (Prim) of the points `indices` under the set's metric.
    pub fn mst_of(&self, indices: &[usize], tag: &str) -> KTreeSolution {
        let m = indices.len();
        assert!(m > 0, "mst of an empty point subset");
        let mut in_tree = vec![false; m];
        let mut best = vec![(f64::INFINITY, usize::MAX); m];
        let mut edges = Vec::with_capacity(m - 1);
        in_tree[0] = true;
        for j in 1..m {
            best[j] = (self.dist(indices[0], indices[j]), 0);
        }
        for _ in 1..m {
            let next = (0..m)
                .filter(|&j| !in_tree[j])
                .min_by(|&a, &b| best[a].0.total_cmp(&best[b].0).then(indices[a].cmp(&indices[b])))
                .expect("vertices left");
            in_tree[next] = true;
            let (w, from) = best[next];
            edges.push(Edge::new(indices[from], indices[next], w));
            for j in 0..m {
                if !in_tree[j] {
                    let d = self.dist(indices[next], indices[j]);
                    if d < best[j].0 {
                        best[j] = (d, next);
                    }
                }
            }
        }
        KTreeSolution::from_edges(indices.iter().copied(), edges, tag).expect("prim yields a tree")
    }

    /// Length of the edges of `t` measured under `metric`.
    pub fn length_under(&self, t: &KTreeSolution, metric: Metric) -> f64 {
        t.edges.iter().map(|e| metric.dist(self.points[e.u], self.points[e.v])).sum()
    }

    /// Largest pairwise Euclidean distance and a pair attaining it.
    pub fn euclidean_diameter(&self, subset: &[usize]) -> (f64, usize, usize) {
        let mut best = (0.0, subset[0], subset[0]);
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                let d = self.points[i].euclid(self.points[j]);
                if d > best.0 {
                    best = (d, i, j);
                }
            }
        }
        best
    }
}

/// Twice the signed area of `abc`; positive for a counter-clockwise turn.
pub fn cross(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Scale-aware collinearity tolerance for `cross` on these three points.
pub(crate) fn cross_tol(a: Point, b: Point, c: Point) -> f64 {
    let s = a.euclid(b).max(b.euclid(c)).max(a.euclid(c));
    1e-9 * s * s
}

/// True when the open segments `ab` and `cd` cross at a single interior point.
/// Segments sharing an endpoint never count as crossing.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let o1 = cross(a, b, c);
    let o2 = cross(a, b, d);
    let o3 = cross(c, d, a);
    let o4 = cross(c, d, b);
    let t1 = cross_tol(a, b, c).max(cross_tol(a, b, d));
    let t2 = cross_tol(c, d, a).max(cross_tol(c, d, b));
    ((o1 > t1 && o2 < -t1) || (o1 < -t1 && o2 > t1)) && ((o3 > t2 && o4 < -t2) || (o3 < -t2 && o4 > t2))
}

/// Indices of the strict convex hull (collinear boundary points dropped) in
/// clockwise order, starting from the lexicographically smallest point.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a].x.total_cmp(&points[b].x).then(points[a].y.total_cmp(&points[b].y)).then(a.cmp(&b))
    });
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let keep = |h: &[usize], p: usize| {
        let (a, b) = (points[h[h.len() - 2]], points[h[h.len() - 1]]);
        let c = points[p];
        // pop on counter-clockwise or collinear turns: builds a clockwise chain
        cross(a, b, c) < -cross_tol(a, b, c)
    };
    let mut top: Vec<usize> = Vec::new();
    for &p in &idx {
        while top.len() >= 2 && !keep(&top, p) {
            top.pop();
        }
        top.push(p);
    }
    let mut bottom: Vec<usize> = Vec::new();
    for &p in idx.iter().rev() {
        while bottom.len() >= 2 && !keep(&bottom, p) {
            bottom.pop();
        }
        bottom.push(p);
    }
    top.pop();
    bottom.pop();
    top.extend(bottom);
    top
}
