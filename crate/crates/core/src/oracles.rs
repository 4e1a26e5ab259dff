//! Exhaustive reference solvers. They share no search code with the real
//! solvers and refuse work beyond their budget instead of truncating.

use crate::error::{bail, Result};
use crate::graph::{Edge, WeightedGraph};
use crate::short_trees::HuInstance;
use crate::tree::KTreeSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_subsets: u64,
    pub max_trees: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 18, max_subsets: 1 << 22, max_trees: 5_000_000 }
    }
}

impl OracleBudget {
    fn vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            bail!(Resource, "oracle limited to {} vertices, got {n}", self.max_vertices);
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k as u64).fold(1u64, |acc, i| acc.saturating_mul(n as u64 - i) / (i + 1))
}

/// Weight lookup that does not go through the graph's adjacency lists.
struct Dense {
    n: usize,
    w: Vec<f64>,
}

impl Dense {
    fn new(g: &WeightedGraph) -> Self {
        let n = g.vertex_count();
        let mut w = vec![f64::INFINITY; n * n];
        for e in g.edges() {
            w[e.u * n + e.v] = e.w;
            w[e.v * n + e.u] = e.w;
        }
        Dense { n, w }
    }

    fn get(&self, a: usize, b: usize) -> f64 {
        self.w[a * self.n + b]
    }

    /// Prim on the vertex subset; `None` when it is not connected.
    fn prim(&self, set: &[usize]) -> Option<Vec<Edge>> {
        let m = set.len();
        let mut dist: Vec<f64> = set.iter().map(|&v| self.get(set[0], v)).collect();
        let mut from = vec![0usize; m];
        let mut used = vec![false; m];
        used[0] = true;
        let mut edges = Vec::with_capacity(m.saturating_sub(1));
        for _ in 1..m {
            let mut pick = usize::MAX;
            for j in 0..m {
                if !used[j] && dist[j].is_finite() && (pick == usize::MAX || dist[j] < dist[pick]) {
                    pick = j;
                }
            }
            if pick == usize::MAX {
                return None;
            }
            used[pick] = true;
            edges.push(Edge::new(set[from[pick]], set[pick], dist[pick]));
            for j in 0..m {
                let d = self.get(set[pick], set[j]);
                if !used[j] && d < dist[j] {
                    dist[j] = d;
                    from[j] = pick;
                }
            }
        }
        Some(edges)
    }
}

fn keep_better(best: &mut Option<KTreeSolution>, t: KTreeSolution) {
    if best.as_ref().is_none_or(|b| t.cmp_quality(b).is_lt()) {
        *best = Some(t);
    }
}

/// Exact kMST by enumerating vertex subsets. With `terminals`, returns the
/// cheapest tree on any vertex set that contains at least `k` terminals.
pub fn oracle_kmst(
    g: &WeightedGraph,
    k: usize,
    terminals: Option<&[usize]>,
    budget: &OracleBudget,
) -> Result<KTreeSolution> {
    let n = g.vertex_count();
    budget.vertices(n)?;
    if k == 0 || k > n {
        bail!(Argument, "k = {k} outside 1..={n}");
    }
    let dense = Dense::new(g);
    let mut best = None;
    match terminals {
        None => {
            if binomial(n, k) > budget.max_subsets {
                bail!(Resource, "C({n}, {k}) subsets exceed the oracle budget");
            }
            let mut mask: u64 = (1 << k) - 1;
            while mask < 1 << n {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if let Some(es) = dense.prim(&set) {
                    keep_better(&mut best, KTreeSolution::from_edges(set, es, "oracle")?);
                }
                // next subset with the same popcount
                let c = mask & mask.wrapping_neg();
                let r = mask + c;
                mask = (((r ^ mask) >> 2) / c) | r;
            }
        }
        Some(terms) => {
            if 1u64 << n > budget.max_subsets {
                bail!(Resource, "2^{n} subsets exceed the oracle budget");
            }
            let tmask = terms.iter().fold(0u64, |m, &t| m | 1 << t);
            if (tmask.count_ones() as usize) < k {
                bail!(Argument, "fewer than k = {k} terminals");
            }
            for mask in 1u64..1 << n {
                if ((mask & tmask).count_ones() as usize) < k {
                    continue;
                }
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if let Some(es) = dense.prim(&set) {
                    keep_better(&mut best, KTreeSolution::from_edges(set, es, "oracle")?);
                }
            }
        }
    }
    match best {
        Some(t) => Ok(t),
        None => bail!(Infeasible, "no connected vertex set of the requested size"),
    }
}

/// Number of spanning trees by the matrix-tree theorem (unit weights).
pub fn kirchhoff_count(g: &WeightedGraph) -> f64 {
    let n = g.vertex_count();
    if n <= 1 {
        return 1.0;
    }
    let m = n - 1;
    let mut a = vec![vec![0.0f64; m]; m];
    for e in g.edges() {
        for (x, y) in [(e.u, e.v), (e.v, e.u)] {
            if x < m {
                a[x][x] += 1.0;
                if y < m {
                    a[x][y] -= 1.0;
                }
            }
        }
    }
    let mut det = 1.0;
    for c in 0..m {
        let p = (c..m).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c].abs() < 1e-12 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..m {
            let f = a[r][c] / a[c][c];
            for x in c..m {
                a[r][x] -= f * a[c][x];
            }
        }
    }
    det.round()
}

fn root(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        x = p[x];
    }
    x
}

fn connectable(n: usize, chosen: &[Edge], rest: &[Edge]) -> bool {
    let mut p: Vec<usize> = (0..n).collect();
    let mut parts = n;
    for e in chosen.iter().chain(rest) {
        let (a, b) = (root(&mut p, e.u), root(&mut p, e.v));
        if a != b {
            p[a] = b;
            parts -= 1;
        }
    }
    parts == 1
}

/// Calls `visit` once per spanning tree of `g`, in include-before-exclude
/// order over the edges sorted by endpoints. Returns the number visited.
pub fn for_each_spanning_tree(
    g: &WeightedGraph,
    budget: &OracleBudget,
    mut visit: impl FnMut(&[Edge]),
) -> Result<u64> {
    let n = g.vertex_count();
    let edges = g.edges().to_vec();
    if n == 0 {
        return Ok(0);
    }
    if !connectable(n, &[], &edges) {
        return Ok(0);
    }
    let expected = kirchhoff_count(g);
    if expected > budget.max_trees as f64 {
        bail!(Resource, "{expected} spanning trees exceed the oracle budget");
    }
    let mut chosen = Vec::with_capacity(n - 1);
    let mut count = 0u64;
    branch(n, &edges, 0, &mut chosen, &mut count, &mut visit);
    debug_assert_eq!(count as f64, expected);
    Ok(count)
}

fn branch(n: usize, edges: &[Edge], i: usize, chosen: &mut Vec<Edge>, count: &mut u64, visit: &mut dyn FnMut(&[Edge])) {
    if chosen.len() == n - 1 {
        *count += 1;
        visit(chosen);
        return;
    }
    if i == edges.len() || edges.len() - i < n - 1 - chosen.len() {
        return;
    }
    let e = edges[i];
    let mut p: Vec<usize> = (0..n).collect();
    for c in chosen.iter() {
        let (a, b) = (root(&mut p, c.u), root(&mut p, c.v));
        p[a] = b;
    }
    if root(&mut p, e.u) != root(&mut p, e.v) {
        chosen.push(e);
        branch(n, edges, i + 1, chosen, count, visit);
        chosen.pop();
    }
    if connectable(n, chosen, &edges[i + 1..]) {
        branch(n, edges, i + 1, chosen, count, visit);
    }
}

pub fn enumerate_spanning_trees(g: &WeightedGraph, budget: &OracleBudget) -> Result<Vec<Vec<Edge>>> {
    let mut out = Vec::new();
    for_each_spanning_tree(g, budget, |t| out.push(t.to_vec()))?;
    Ok(out)
}

/// All-pairs tree distances by walking from every vertex.
pub(crate) fn tree_dists(n: usize, edges: &[Edge], len: impl Fn(&Edge) -> f64) -> Vec<Vec<f64>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges {
        adj[e.u].push((e.v, len(e)));
        adj[e.v].push((e.u, len(e)));
    }
    (0..n)
        .map(|s| {
            let mut d = vec![f64::NAN; n];
            d[s] = 0.0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(v, w) in &adj[u] {
                    if d[v].is_nan() {
                        d[v] = d[u] + w;
                        stack.push(v);
                    }
                }
            }
            d
        })
        .collect()
}

/// Least diameter over all trees on exactly `k` vertices.
pub fn oracle_min_diam_ktree(g: &WeightedGraph, k: usize, budget: &OracleBudget) -> Result<(f64, KTreeSolution)> {
    let n = g.vertex_count();
    budget.vertices(n)?;
    if k == 0 || k > n {
        bail!(Argument, "k = {k} outside 1..={n}");
    }
    if binomial(n, k) > budget.max_subsets {
        bail!(Resource, "C({n}, {k}) subsets exceed the oracle budget");
    }
    let mut best: Option<(f64, f64, Vec<Edge>, Vec<usize>)> = None;
    let mut mask: u64 = (1 << k) - 1;
    while mask < 1 << n {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let (h, map) = g.induced(&set);
        for_each_spanning_tree(&h, budget, |t| {
            let d = tree_dists(k, t, |e| e.w);
            let diam = d.iter().flatten().copied().fold(0.0, f64::max);
            let cost: f64 = t.iter().map(|e| e.w).sum();
            if best.as_ref().is_none_or(|b| (diam, cost) < (b.0, b.1)) {
                let es = t.iter().map(|e| Edge::new(map[e.u], map[e.v], e.w)).collect();
                best = Some((diam, cost, es, set.clone()));
            }
        })?;
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    match best {
        Some((diam, _, es, set)) => Ok((diam, KTreeSolution::from_edges(set, es, "oracle")?)),
        None => bail!(Infeasible, "no connected set of {k} vertices"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HuObjective {
    Communication,
    DiameterCost,
}

impl std::str::FromStr for HuObjective {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "comm" => Ok(HuObjective::Communication),
            "diamcost" => Ok(HuObjective::DiameterCost),
            other => bail!(Parse, "unknown objective '{other}'"),
        }
    }
}

/// Optimal objective value over all spanning trees of the complete graph.
pub fn oracle_hu_tree(inst: &HuInstance, objective: HuObjective, budget: &OracleBudget) -> Result<(f64, KTreeSolution)> {
    let n = inst.n();
    if n == 0 {
        bail!(Argument, "empty instance");
    }
    let complete = WeightedGraph::complete(n, |i, j| inst.d.get(i, j))?;
    let mut best: Option<(f64, Vec<Edge>)> = None;
    for_each_spanning_tree(&complete, budget, |t| {
        let d = tree_dists(n, t, |e| inst.d.get(e.u, e.v));
        let mut value = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                let c = inst.r.get(i, j) * d[i][j];
                value = match objective {
                    HuObjective::Communication => value + c,
                    HuObjective::DiameterCost => value.max(c),
                };
            }
        }
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, t.to_vec()));
        }
    })?;
    let (value, es) = best.unwrap_or((0.0, Vec::new()));
    Ok((value, KTreeSolution::from_edges(0..n, es, "oracle")?))
}
