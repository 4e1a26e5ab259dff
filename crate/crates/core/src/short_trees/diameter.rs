//! Minimum-diameter trees on exactly k vertices, via vertex and edge
//! centers, and the roof-curve sweep that locates a center inside an edge.

use std::collections::BTreeSet;

use crate::error::{bail, Result};
use crate::graph::{all_pairs, DistanceMatrix, Edge, OrdF64, ShortestPaths, WeightedGraph};
use crate::tree::{remove_leaves_until, KTreeSolution};

pub const TAG: &str = "min-diameter";

/// Distance from node `x` to the point at offset `l` along edge `(u, v, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoofCurve {
    pub x: usize,
    pub edge: Edge,
    pub du: f64,
    pub dv: f64,
}

impl RoofCurve {
    pub fn new(x: usize, edge: Edge, du: f64, dv: f64) -> Self {
        RoofCurve { x, edge, du, dv }
    }

    /// Offset of the peak, clamped to the edge.
    pub fn breakpoint(&self) -> f64 {
        ((self.edge.w + self.dv - self.du) / 2.0).clamp(0.0, self.edge.w)
    }

    pub fn eval(&self, l: f64) -> f64 {
        (l + self.du).min(self.edge.w - l + self.dv)
    }
}

pub fn roof_curve(x: usize, e: &Edge, dists: &DistanceMatrix) -> RoofCurve {
    RoofCurve::new(x, *e, dists.get(x, e.u), dists.get(x, e.v))
}

fn kth(values: &mut [f64], k: usize) -> f64 {
    values.sort_by(f64::total_cmp);
    values[k - 1]
}

/// Offset in `[0, w]` minimising the `k`-th smallest curve value, and that value.
pub fn roof_sweep_edge(e: &Edge, curves: &[RoofCurve], k: usize) -> Result<(f64, f64)> {
    if k == 0 || k > curves.len() {
        bail!(Argument, "k = {k} outside 1..={}", curves.len());
    }
    let w = e.w;
    let mut events = vec![0.0, w];
    for a in curves {
        events.push(a.breakpoint());
        for b in curves {
            let l = (w + b.dv - a.du) / 2.0;
            if l.is_finite() && (0.0..=w).contains(&l) {
                events.push(l);
            }
        }
    }
    events.sort_by(f64::total_cmp);
    events.dedup();
    let mut buf = vec![0.0; curves.len()];
    let mut best = (0.0, f64::INFINITY);
    for l in events {
        for (slot, c) in buf.iter_mut().zip(curves) {
            *slot = c.eval(l);
        }
        let r = kth(&mut buf, k);
        if r < best.1 {
            best = (l, r);
        }
    }
    Ok(best)
}

/// Smallest radius over all edge and vertex placements of a center.
pub fn roof_sweep(g: &WeightedGraph, k: usize) -> Result<f64> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        bail!(Argument, "k = {k} outside 1..={n}");
    }
    let d = DistanceMatrix::from_shortest_paths(g);
    let mut best = if k == 1 { 0.0 } else { f64::INFINITY };
    for e in g.edges() {
        let curves: Vec<RoofCurve> = (0..n).map(|x| roof_curve(x, e, &d)).collect();
        best = best.min(roof_sweep_edge(e, &curves, k)?.1);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Center {
    Vertex(usize),
    /// A point at `offset` from `edge.u` along the edge.
    Edge { edge: Edge, offset: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinDiameterTree {
    pub tree: KTreeSolution,
    pub value: f64,
    pub center: Center,
}

/// Best `d^u + d^v + w` for edge `(u, v, w)` with balls around `u` and `v`
/// covering `k` vertices, together with `d^u`. Offsets stay on the edge,
/// i.e. `|d^u - d^v| <= w`.
pub fn edge_candidate(sp: &[ShortestPaths], e: &Edge, k: usize) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for (a, b) in [(e.u, e.v), (e.v, e.u)] {
        let (da, db) = (&sp[a].dist, &sp[b].dist);
        let mut by_b: Vec<usize> = (0..da.len()).filter(|&x| db[x].is_finite()).collect();
        by_b.sort_by(|&x, &y| db[x].total_cmp(&db[y]));
        let mut radii: Vec<f64> = da.iter().copied().filter(|d| d.is_finite()).collect();
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        for ra in radii {
            let mut covered = da.iter().filter(|&&d| d <= ra).count();
            let mut need = f64::NEG_INFINITY;
            for &x in &by_b {
                if covered >= k {
                    break;
                }
                if da[x] > ra {
                    covered += 1;
                    need = db[x];
                }
            }
            if covered < k {
                continue;
            }
            let rb = need.max(ra - e.w);
            if rb > ra + e.w {
                continue;
            }
            let value = ra + rb + e.w;
            let du = if a == e.u { ra } else { rb };
            if best.is_none_or(|(v, _)| value < v) {
                best = Some((value, du));
            }
        }
    }
    best
}

/// Tree on exactly `k` vertices of least diameter.
pub fn min_diameter_ktree(g: &WeightedGraph, k: usize) -> Result<MinDiameterTree> {
    let n = g.vertex_count();
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    let largest = g.components().iter().map(Vec::len).max().unwrap_or(0);
    if largest < k {
        bail!(Infeasible, "component size {largest} < k");
    }
    let sp = all_pairs(g);
    let mut best: Option<(f64, Center)> = None;
    for (i, s) in sp.iter().enumerate() {
        let mut ds: Vec<f64> = s.dist.iter().copied().filter(|d| d.is_finite()).collect();
        if ds.len() < k {
            continue;
        }
        let r = kth(&mut ds, k);
        if best.as_ref().is_none_or(|b| 2.0 * r < b.0) {
            best = Some((2.0 * r, Center::Vertex(i)));
        }
    }
    for e in g.edges() {
        if let Some((value, du)) = edge_candidate(&sp, e, k) {
            if best.as_ref().is_none_or(|b| value < b.0) {
                let offset = value / 2.0 - du;
                best = Some((value, Center::Edge { edge: *e, offset }));
            }
        }
    }
    let (value, center) = best.expect("a component holds k vertices");
    let radius = value / 2.0;
    let tol = 1e-9 * radius.max(1.0);
    // distance from the center to every vertex and the tree edge reaching it
    let mut reach: Vec<(f64, Option<Edge>)> = vec![(f64::INFINITY, None); n];
    let mut extra = Vec::new();
    match center {
        Center::Vertex(c) => {
            for x in 0..n {
                reach[x] = (sp[c].dist[x], parent_edge(g, &sp[c], x));
            }
        }
        Center::Edge { edge, offset } => {
            let (su, sv) = (&sp[edge.u], &sp[edge.v]);
            let mut j_side = false;
            for x in 0..n {
                let (via_u, via_v) = (offset + su.dist[x], edge.w - offset + sv.dist[x]);
                reach[x] = if via_u <= via_v {
                    (via_u, parent_edge(g, su, x))
                } else {
                    j_side = true;
                    (via_v, parent_edge(g, sv, x))
                };
            }
            if j_side {
                extra.push(edge);
            }
        }
    }
    let covered: Vec<usize> = (0..n).filter(|&x| reach[x].0 <= radius + tol).collect();
    let inside: BTreeSet<usize> = covered.iter().copied().collect();
    let mut edges: Vec<Edge> = covered.iter().filter_map(|&x| reach[x].1).collect();
    edges.extend(extra);
    debug_assert!(edges.iter().all(|e| inside.contains(&e.u) && inside.contains(&e.v)));
    let (vs, es) = remove_leaves_until(&covered, &edges, k, |x, _| (OrdF64(reach[x].0), x));
    let tree = KTreeSolution::from_edges(vs, es, TAG)?;
    Ok(MinDiameterTree { tree, value, center })
}

fn parent_edge(g: &WeightedGraph, sp: &ShortestPaths, x: usize) -> Option<Edge> {
    let p = sp.parent[x]?;
    Some(Edge::new(p, x, g.weight(p, x).expect("parent edge exists")))
}
