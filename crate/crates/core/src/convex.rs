//! Exact kMST for points in convex position, and the path DP for points on
//! a circle.

use crate::error::{bail, Result};
use crate::geometry::{convex_hull, Metric, Point, PointSet2D};
use crate::graph::Edge;
use crate::tree::KTreeSolution;

pub const TAG: &str = "convex-dp";
pub const CIRCLE_TAG: &str = "circle-dp";
/// Tag used when the input has a diametrically opposite pair.
pub const CIRCLE_UNVERIFIED_TAG: &str = "circle-unverified";
pub const MAX_CONVEX_POINTS: usize = 25;

const MAX_DEGREE: usize = 4;

/// Points in strict convex position, in clockwise boundary order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexInstance {
    /// `order[p]` is the input index of the `p`-th boundary point.
    pub order: Vec<usize>,
    dist: Vec<Vec<f64>>,
}

impl ConvexInstance {
    pub fn new(ps: &PointSet2D) -> Result<Self> {
        if ps.metric != Metric::Euclidean {
            bail!(Applicability, "convex-position solver needs the Euclidean metric");
        }
        let order = convex_hull(&ps.points);
        if order.len() != ps.len() {
            bail!(
                Applicability,
                "{} of {} points are not strict hull vertices; use merge-collect or the planar heuristic",
                ps.len() - order.len(),
                ps.len()
            );
        }
        let dist = order.iter().map(|&a| order.iter().map(|&b| ps.dist(a, b)).collect()).collect();
        Ok(ConvexInstance { order, dist })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Memoised SOLN(s; i; d; segment). A segment is `(start, len)` on the
/// boundary cycle and never contains `i`.
struct Soln<'a> {
    inst: &'a ConvexInstance,
    memo: Vec<f64>,
}

impl<'a> Soln<'a> {
    fn new(inst: &'a ConvexInstance, k: usize) -> Self {
        let n = inst.len();
        Soln { inst, memo: vec![f64::NAN; (k + 1) * n * (MAX_DEGREE + 1) * n * n] }
    }

    fn slot(&self, s: usize, i: usize, d: usize, start: usize, len: usize) -> usize {
        let n = self.inst.len();
        (((s * n + i) * (MAX_DEGREE + 1) + d) * n + start) * n + len
    }

    fn at(&self, p: usize) -> usize {
        p % self.inst.len()
    }

    fn get(&mut self, s: usize, i: usize, d: usize, start: usize, len: usize) -> f64 {
        if s == 1 {
            return if d == 0 { 0.0 } else { f64::INFINITY };
        }
        if d == 0 || d > MAX_DEGREE || s > len + 1 {
            return f64::INFINITY;
        }
        let key = self.slot(s, i, d, start % self.inst.len(), len);
        let cached = self.memo[key];
        if !cached.is_nan() {
            return cached;
        }
        let mut best = f64::INFINITY;
        self.each_choice(s, i, d, start, len, |c, _| best = best.min(c));
        self.memo[key] = best;
        best
    }

    /// Calls `f(cost, choice)` for each decomposition, in a fixed order.
    fn each_choice(&mut self, s: usize, i: usize, d: usize, start: usize, len: usize, mut f: impl FnMut(f64, Choice)) {
        if d >= 2 {
            for a in 1..len {
                for s1 in 2..=s.min(a + 1) {
                    let s2 = s + 1 - s1;
                    let c = self.get(s1, i, 1, start, a) + self.get(s2, i, d - 1, start + a, len - a);
                    f(c, Choice::Split { a, s1 });
                }
            }
        } else {
            for p in 0..len {
                let j = self.at(start + p);
                let w = self.inst.dist[i][j];
                for d1 in 0..MAX_DEGREE {
                    for d2 in 0..MAX_DEGREE - d1 {
                        for s1 in 1..s {
                            let s2 = s - s1;
                            let left = self.get(s1, j, d1, start, p);
                            if !left.is_finite() {
                                continue;
                            }
                            let c = w + left + self.get(s2, j, d2, start + p + 1, len - p - 1);
                            f(c, Choice::Hop { p, d1, d2, s1 });
                        }
                    }
                }
            }
        }
    }

    fn rebuild(&mut self, s: usize, i: usize, d: usize, start: usize, len: usize, out: &mut Vec<(usize, usize)>) {
        if s == 1 {
            return;
        }
        let target = self.get(s, i, d, start, len);
        let mut pick = None;
        self.each_choice(s, i, d, start, len, |c, ch| {
            if pick.is_none() && c == target {
                pick = Some(ch);
            }
        });
        match pick.expect("finite entry has a witness") {
            Choice::Split { a, s1 } => {
                self.rebuild(s1, i, 1, start, a, out);
                self.rebuild(s + 1 - s1, i, d - 1, start + a, len - a, out);
            }
            Choice::Hop { p, d1, d2, s1 } => {
                let j = self.at(start + p);
                out.push((i, j));
                self.rebuild(s1, j, d1, start, p, out);
                self.rebuild(s - s1, j, d2, start + p + 1, len - p - 1, out);
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Choice {
    Split { a: usize, s1: usize },
    Hop { p: usize, d1: usize, d2: usize, s1: usize },
}

/// Exact kMST for points in strict convex position (`n <= 25`).
pub fn convex_kmst(ps: &PointSet2D, k: usize) -> Result<KTreeSolution> {
    let n = ps.len();
    if n > MAX_CONVEX_POINTS {
        bail!(Resource, "convex solver limited to {MAX_CONVEX_POINTS} points, got {n}");
    }
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if k > n {
        bail!(Infeasible, "k = {k} exceeds the {n} points");
    }
    let inst = ConvexInstance::new(ps)?;
    if k == 1 {
        return Ok(KTreeSolution::single(0, TAG));
    }
    let mut soln = Soln::new(&inst, k);
    let mut best = (f64::INFINITY, 0, 0);
    for i in 0..n {
        for d in 1..=MAX_DEGREE {
            let c = soln.get(k, i, d, i + 1, n - 1);
            if c < best.0 {
                best = (c, i, d);
            }
        }
    }
    let (_, i, d) = best;
    let mut pairs = Vec::new();
    soln.rebuild(k, i, d, i + 1, n - 1, &mut pairs);
    let edges = pairs
        .into_iter()
        .map(|(a, b)| Edge::new(inst.order[a], inst.order[b], inst.dist[a][b]))
        .collect();
    KTreeSolution::from_edges(std::iter::empty(), edges, TAG)
}

/// Circle through the three points spanning the largest triangle.
fn fit_circle(points: &[Point]) -> Option<(Point, f64)> {
    let n = points.len();
    let mut best = (0.0, 0, 0, 0);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let area = crate::geometry::cross(points[a], points[b], points[c]).abs();
                if area > best.0 {
                    best = (area, a, b, c);
                }
            }
        }
    }
    let (area, a, b, c) = best;
    if area == 0.0 {
        return None;
    }
    let (p, q, r) = (points[a], points[b], points[c]);
    let dd = 2.0 * (p.x * (q.y - r.y) + q.x * (r.y - p.y) + r.x * (p.y - q.y));
    let sq = |t: Point| t.x * t.x + t.y * t.y;
    let ux = (sq(p) * (q.y - r.y) + sq(q) * (r.y - p.y) + sq(r) * (p.y - q.y)) / dd;
    let uy = (sq(p) * (r.x - q.x) + sq(q) * (p.x - r.x) + sq(r) * (q.x - p.x)) / dd;
    let center = Point::new(ux, uy);
    Some((center, center.euclid(p)))
}

/// Minimum path on `k` concyclic points taken in circular order.
pub fn circle_kmst(ps: &PointSet2D, k: usize) -> Result<KTreeSolution> {
    let n = ps.len();
    if ps.metric != Metric::Euclidean {
        bail!(Applicability, "circle solver needs the Euclidean metric");
    }
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if k > n {
        bail!(Infeasible, "k = {k} exceeds the {n} points");
    }
    let mut tag = CIRCLE_TAG;
    let mut order: Vec<usize> = (0..n).collect();
    if n >= 3 {
        let Some((center, radius)) = fit_circle(&ps.points) else {
            bail!(Applicability, "points are collinear, not concyclic");
        };
        let tol = 1e-9 * radius.max(1.0);
        if let Some(p) = (0..n).find(|&p| (ps.points[p].euclid(center) - radius).abs() > tol) {
            bail!(Applicability, "point {p} is off the fitted circle");
        }
        let diametral =
            (0..n).any(|a| (a + 1..n).any(|b| (ps.points[a].euclid(ps.points[b]) - 2.0 * radius).abs() <= 2.0 * tol));
        if diametral {
            tag = CIRCLE_UNVERIFIED_TAG;
        }
        let angle = |p: usize| (ps.points[p].y - center.y).atan2(ps.points[p].x - center.x);
        order.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)).then(a.cmp(&b)));
    }
    if k == 1 {
        return Ok(KTreeSolution::single(0, tag));
    }
    let d = |a: usize, b: usize| ps.dist(order[a % n], order[b % n]);
    let mut best: (f64, Vec<usize>) = (f64::INFINITY, Vec::new());
    for start in 0..n {
        // f[c][o]: shortest path from start through c points ending at offset o
        let mut f = vec![vec![f64::INFINITY; n]; k + 1];
        let mut from = vec![vec![usize::MAX; n]; k + 1];
        f[1][0] = 0.0;
        for c in 2..=k {
            for o in c - 1..n {
                for prev in c - 2..o {
                    let v = f[c - 1][prev] + d(start + prev, start + o);
                    if v < f[c][o] {
                        f[c][o] = v;
                        from[c][o] = prev;
                    }
                }
            }
        }
        for o in k - 1..n {
            if f[k][o] < best.0 {
                let mut path = vec![o];
                let mut c = k;
                while c > 1 {
                    let p = from[c][*path.last().unwrap()];
                    path.push(p);
                    c -= 1;
                }
                best = (f[k][o], path.into_iter().rev().map(|x| order[(start + x) % n]).collect());
            }
        }
    }
    let path = best.1;
    let edges = path.windows(2).map(|w| Edge::new(w[0], w[1], ps.dist(w[0], w[1]))).collect();
    KTreeSolution::from_edges(path.iter().copied(), edges, tag)
}
