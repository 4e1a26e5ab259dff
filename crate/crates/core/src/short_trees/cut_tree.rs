//! Max-flow and the Gomory-Hu cut tree (Gusfield's construction).

use std::collections::VecDeque;

use crate::error::{bail, Result};
use crate::graph::{Edge, WeightedGraph};

struct Arc {
    to: usize,
    cap: f64,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    eps: f64,
}

impl Network {
    fn new(g: &WeightedGraph) -> Self {
        let n = g.vertex_count();
        let mut net = Network { arcs: Vec::new(), out: vec![Vec::new(); n], eps: 0.0 };
        let mut scale: f64 = 0.0;
        for e in g.edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                net.out[a].push(net.arcs.len());
                net.arcs.push(Arc { to: b, cap: e.w });
            }
            scale = scale.max(e.w);
        }
        net.eps = 1e-12 * scale.max(1.0);
        net
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.out.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > self.eps && level[arc.to] == usize::MAX {
                    level[arc.to] = level[u] + 1;
                    q.push_back(arc.to);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, limit: f64, level: &[usize], next: &mut [usize]) -> f64 {
        if u == t {
            return limit;
        }
        while next[u] < self.out[u].len() {
            let a = self.out[u][next[u]];
            let to = self.arcs[a].to;
            if self.arcs[a].cap > self.eps && level[to] == level[u] + 1 {
                let got = self.push(to, t, limit.min(self.arcs[a].cap), level, next);
                if got > 0.0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0.0
    }

    /// Dinic; returns the flow value and the residual-reachable side of `s`.
    fn max_flow(mut self, s: usize, t: usize) -> (f64, Vec<bool>) {
        let mut flow = 0.0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                let side = level.iter().map(|&l| l != usize::MAX).collect();
                return (flow, side);
            }
            let mut next = vec![0; self.out.len()];
            loop {
                let f = self.push(s, t, f64::INFINITY, &level, &mut next);
                if f <= 0.0 {
                    break;
                }
                flow += f;
            }
        }
    }
}

/// Minimum `s`-`t` cut of an undirected capacitated graph: its value and
/// the source side as a membership vector.
pub fn min_cut(g: &WeightedGraph, s: usize, t: usize) -> Result<(f64, Vec<bool>)> {
    let n = g.vertex_count();
    if s >= n || t >= n || s == t {
        bail!(Argument, "min cut needs two distinct vertices below {n}, got {s} and {t}");
    }
    Ok(Network::new(g).max_flow(s, t))
}

/// A tree whose path minima give every pairwise minimum cut.
#[derive(Debug, Clone, PartialEq)]
pub struct CutTree {
    parent: Vec<usize>,
    capacity: Vec<f64>,
}

impl CutTree {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// Tree edges with their capacities as weights.
    pub fn edges(&self) -> Vec<Edge> {
        let mut es: Vec<Edge> =
            (1..self.parent.len()).map(|i| Edge::new(i, self.parent[i], self.capacity[i])).collect();
        es.sort_by_key(Edge::key);
        es
    }

    /// Smallest capacity on the tree path between `a` and `b`.
    pub fn min_cut(&self, a: usize, b: usize) -> f64 {
        let n = self.parent.len();
        let mut adj = vec![Vec::new(); n];
        for e in self.edges() {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        let mut best = vec![f64::NAN; n];
        best[a] = f64::INFINITY;
        let mut stack = vec![a];
        while let Some(u) = stack.pop() {
            for &(v, w) in &adj[u] {
                if best[v].is_nan() {
                    best[v] = best[u].min(w);
                    stack.push(v);
                }
            }
        }
        best[b]
    }
}

/// Gomory-Hu tree with `n - 1` max-flow calls and no contractions.
pub fn gomory_hu(capacities: &WeightedGraph) -> Result<CutTree> {
    let n = capacities.vertex_count();
    if n == 0 {
        bail!(Argument, "empty graph");
    }
    let mut parent = vec![0; n];
    let mut capacity = vec![0.0; n];
    for s in 1..n {
        let t = parent[s];
        let (f, side) = min_cut(capacities, s, t)?;
        capacity[s] = f;
        for i in 0..n {
            if i != s && side[i] && parent[i] == t {
                parent[i] = s;
            }
        }
        if side[parent[t]] {
            parent[s] = parent[t];
            parent[t] = s;
            capacity[s] = capacity[t];
            capacity[t] = f;
        }
    }
    Ok(CutTree { parent, capacity })
}
