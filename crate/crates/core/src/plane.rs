//! k-point minimum spanning trees in the plane by disk windows and grid
//! bucketing, for the Euclidean and rectilinear metrics.

use crate::error::{bail, Result};
use crate::geometry::{Point, PointSet2D};
use crate::merge_collect::ceil_sqrt;
use crate::tree::KTreeSolution;

pub const TAG: &str = "plane";

/// Closed disk of diameter `√3·d(i, j)` around the midpoint of an anchor pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateWindow {
    pub anchor: (usize, usize),
    pub delta: f64,
    pub center: Point,
    pub contained: Vec<usize>,
}

impl CandidateWindow {
    /// Lower-left corner of the axis-aligned square circumscribing the disk.
    pub fn square_origin(&self) -> Point {
        Point::new(self.center.x - self.delta / 2.0, self.center.y - self.delta / 2.0)
    }
}

/// Window anchored at points `i` and `j`. Membership is always Euclidean.
pub fn circle_filter(ps: &PointSet2D, i: usize, j: usize) -> CandidateWindow {
    let (a, b) = (ps.points[i], ps.points[j]);
    let delta = 3f64.sqrt() * a.euclid(b);
    let center = a.midpoint(b);
    let limit = delta / 2.0 + 1e-9 * delta.max(1.0);
    let contained = (0..ps.len()).filter(|&p| ps.points[p].euclid(center) <= limit).collect();
    CandidateWindow { anchor: (i, j), delta, center, contained }
}

/// `dim x dim` cells over the window's square, listed row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CellGrid {
    pub dim: usize,
    pub side: f64,
    pub origin: Point,
    pub cells: Vec<Vec<usize>>,
}

impl CellGrid {
    pub fn new(window: &CandidateWindow, ps: &PointSet2D, k: usize) -> Self {
        let dim = ceil_sqrt(k.max(1));
        let side = window.delta / dim as f64;
        let origin = window.square_origin();
        let mut cells = vec![Vec::new(); dim * dim];
        let slot = |v: f64| -> usize {
            if side > 0.0 {
                ((v / side).floor().max(0.0) as usize).min(dim - 1)
            } else {
                0
            }
        };
        for &p in &window.contained {
            let q = ps.points[p];
            let (col, row) = (slot(q.x - origin.x), slot(q.y - origin.y));
            cells[row * dim + col].push(p);
        }
        CellGrid { dim, side, origin, cells }
    }
}

/// Exactly `k` points from the fullest cells, and the number of cells used.
pub fn grid_select(window: &CandidateWindow, ps: &PointSet2D, k: usize) -> Result<(Vec<usize>, usize)> {
    if k == 0 || window.contained.len() < k {
        bail!(Argument, "window holds {} points, need k = {k}", window.contained.len());
    }
    let grid = CellGrid::new(window, ps, k);
    let mut order: Vec<usize> = (0..grid.cells.len()).collect();
    order.sort_by(|&a, &b| grid.cells[b].len().cmp(&grid.cells[a].len()).then(a.cmp(&b)));
    let mut chosen = Vec::with_capacity(k);
    let mut used = 0;
    for c in order {
        if chosen.len() >= k {
            break;
        }
        let mut pts = grid.cells[c].clone();
        pts.sort_unstable();
        let surplus = (chosen.len() + pts.len()).saturating_sub(k);
        chosen.extend_from_slice(&pts[surplus..]);
        used += 1;
    }
    chosen.sort_unstable();
    Ok((chosen, used))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneResult {
    pub tree: KTreeSolution,
    pub window: CandidateWindow,
    pub cells_used: usize,
}

/// Best window: the tree with the smallest length under the set's metric.
pub fn plane_kmst_detailed(ps: &PointSet2D, k: usize) -> Result<PlaneResult> {
    let n = ps.len();
    if n == 0 {
        bail!(Argument, "empty point set");
    }
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if k > n {
        bail!(Infeasible, "k = {k} exceeds the {n} points");
    }
    if k == 1 {
        let window = CandidateWindow { anchor: (0, 0), delta: 0.0, center: ps.points[0], contained: vec![0] };
        return Ok(PlaneResult { tree: KTreeSolution::single(0, TAG), window, cells_used: 1 });
    }
    let mut best: Option<PlaneResult> = None;
    for i in 0..n {
        for j in i + 1..n {
            let window = circle_filter(ps, i, j);
            if window.contained.len() < k {
                continue;
            }
            let (chosen, cells_used) = grid_select(&window, ps, k)?;
            let tree = ps.mst_of(&chosen, TAG);
            if best.as_ref().is_none_or(|b| tree.cost < b.tree.cost) {
                best = Some(PlaneResult { tree, window, cells_used });
            }
        }
    }
    match best {
        Some(b) => Ok(b),
        None => bail!(Infeasible, "no window holds k = {k} points"),
    }
}

pub fn plane_kmst(ps: &PointSet2D, k: usize) -> Result<KTreeSolution> {
    Ok(plane_kmst_detailed(ps, k)?.tree)
}
