//! Undirected weighted graphs, shortest paths, spanning trees and metric closure.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap};

use crate::error::{bail, Result};
use crate::tree::KTreeSolution;

/// An undirected edge, always stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, w: f64) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, w }
    }

    pub fn key(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Order by weight, then endpoint pair. This is the tie-break every
    /// greedy step in the crate uses.
    pub fn cmp_weight(&self, other: &Edge) -> Ordering {
        self.w
            .total_cmp(&other.w)
            .then_with(|| self.key().cmp(&other.key()))
    }
}

/// Totally ordered `f64` for heaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct OrdF64(pub f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Simple undirected graph with nonnegative finite weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, f64)>>,
}

/// Collects edges and validates them into a [`WeightedGraph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    keep_min_parallel: bool,
}

impl GraphBuilder {
    pub fn edge(mut self, u: usize, v: usize, w: f64) -> Self {
        self.edges.push((u, v, w));
        self
    }

    pub fn edges(mut self, it: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        self.edges.extend(it);
        self
    }

    /// Keep the lightest of parallel edges instead of rejecting them.
    pub fn keep_min_parallel(mut self, yes: bool) -> Self {
        self.keep_min_parallel = yes;
        self
    }

    pub fn build(self) -> Result<WeightedGraph> {
        let mut by_pair: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (a, b, w) in self.edges {
            if a >= self.n || b >= self.n {
                bail!(Argument, "edge ({a},{b}) out of range for {} vertices", self.n);
            }
            if a == b {
                bail!(Argument, "self-loop at vertex {a}");
            }
            if !w.is_finite() || w < 0.0 {
                bail!(Argument, "edge ({a},{b}) has invalid weight {w}");
            }
            let e = Edge::new(a, b, w);
            match by_pair.get_mut(&e.key()) {
                Some(old) if self.keep_min_parallel => *old = old.min(w),
                Some(_) => bail!(Argument, "parallel edge ({},{})", e.u, e.v),
                None => {
                    by_pair.insert(e.key(), w);
                }
            }
        }
        let edges: Vec<Edge> = by_pair.into_iter().map(|((u, v), w)| Edge { u, v, w }).collect();
        let mut adj = vec![Vec::new(); self.n];
        for e in &edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(x, _)| x);
        }
        Ok(WeightedGraph { n: self.n, edges, adj })
    }
}

impl WeightedGraph {
    pub fn builder(n: usize) -> GraphBuilder {
        GraphBuilder { n, edges: Vec::new(), keep_min_parallel: false }
    }

    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        Self::builder(n).edges(edges).build()
    }

    /// Complete graph with weights from `weight(u, v)` for `u < v`.
    pub fn complete(n: usize, mut weight: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, weight(u, v)));
            }
        }
        Self::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by endpoint pair.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` sorted by id, with edge weights.
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        if a >= self.n || b >= self.n {
            return None;
        }
        self.adj[a]
            .binary_search_by_key(&b, |&(x, _)| x)
            .ok()
            .map(|i| self.adj[a][i].1)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.weight(a, b).is_some()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Distinct edge weights in increasing order.
    pub fn distinct_weights(&self) -> Vec<f64> {
        let mut ws: Vec<f64> = self.edges.iter().map(|e| e.w).collect();
        ws.sort_by(f64::total_cmp);
        ws.dedup();
        ws
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &(y, _) in &self.adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices` (relabelled `0..len` in the given
    /// order) together with the local-to-global id map.
    pub fn induced(&self, vertices: &[usize]) -> (WeightedGraph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| local[e.u] != usize::MAX && local[e.v] != usize::MAX)
            .map(|e| Edge::new(local[e.u], local[e.v], e.w))
            .collect();
        let g = WeightedGraph::new(vertices.len(), edges.iter().map(|e| (e.u, e.v, e.w)))
            .expect("induced subgraph of a valid graph is valid");
        (g, vertices.to_vec())
    }
}

/// Single-source shortest-path distances with a parent tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPaths {
    pub source: usize,
    pub dist: Vec<f64>,
    pub parent: Vec<Option<usize>>,
}

impl ShortestPaths {
    /// Vertex sequence from the source to `target`, or `None` if unreachable.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        if !self.dist[target].is_finite() {
            return None;
        }
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

/// Dijkstra from `source`. Unreachable vertices get `f64::INFINITY` and no parent.
pub fn sssp(g: &WeightedGraph, source: usize) -> Result<ShortestPaths> {
    if source >= g.vertex_count() {
        bail!(Argument, "source {source} out of range for {} vertices", g.vertex_count());
    }
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Reverse((OrdF64(0.0), source)));
    while let Some(Reverse((OrdF64(d), x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        for &(y, w) in g.neighbors(x) {
            let nd = d + w;
            if nd < dist[y] {
                dist[y] = nd;
                parent[y] = Some(x);
                heap.push(Reverse((OrdF64(nd), y)));
            }
        }
    }
    Ok(ShortestPaths { source, dist, parent })
}

/// Shortest paths from every vertex.
pub fn all_pairs(g: &WeightedGraph) -> Vec<ShortestPaths> {
    (0..g.vertex_count())
        .map(|s| sssp(g, s).expect("source in range"))
        .collect()
}

/// Kruskal over an explicit edge list on vertices `0..n`. Returns a minimum
/// spanning forest; ties resolved by [`Edge::cmp_weight`].
pub fn kruskal(n: usize, edges: &[Edge]) -> Vec<Edge> {
    let mut sorted = edges.to_vec();
    sorted.sort_by(Edge::cmp_weight);
    let mut dsu = DisjointSets::new(n);
    sorted.into_iter().filter(|e| dsu.union(e.u, e.v)).collect()
}

/// Minimum spanning forest of `g`.
pub fn mst_forest(g: &WeightedGraph) -> Vec<Edge> {
    kruskal(g.vertex_count(), g.edges())
}

/// Minimum spanning tree of a connected graph.
pub fn mst(g: &WeightedGraph) -> Result<KTreeSolution> {
    if g.vertex_count() == 0 {
        bail!(Argument, "empty graph");
    }
    let comps = g.components();
    if comps.len() > 1 {
        let sizes: Vec<String> = comps.iter().map(|c| c.len().to_string()).collect();
        bail!(Infeasible, "graph is disconnected (component sizes {})", sizes.join(", "));
    }
    KTreeSolution::from_edges(0..g.vertex_count(), mst_forest(g), "mst")
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Complete graph of shortest-path distances on a vertex subset, with the
/// shortest paths needed to expand its edges back into the source graph.
#[derive(Debug, Clone)]
pub struct MetricClosure {
    pub graph: WeightedGraph,
    /// Local closure id to source-graph vertex.
    pub vertices: Vec<usize>,
    trees: Vec<ShortestPaths>,
}

impl MetricClosure {
    /// Source-graph edges of the witness shortest path between two closure vertices.
    pub fn expand(&self, a: usize, b: usize, source: &WeightedGraph) -> Vec<Edge> {
        let target = self.vertices[b];
        let path = self.trees[a].path_to(target).expect("closure pairs are connected");
        path.windows(2)
            .map(|p| Edge::new(p[0], p[1], source.weight(p[0], p[1]).expect("path edge exists")))
            .collect()
    }
}

/// Metric closure on `subset` (all vertices when `None`).
pub fn metric_closure(g: &WeightedGraph, subset: Option<&[usize]>) -> Result<MetricClosure> {
    let vertices: Vec<usize> = match subset {
        Some(s) => {
            let mut s = s.to_vec();
            s.sort_unstable();
            s.dedup();
            s
        }
        None => (0..g.vertex_count()).collect(),
    };
    let trees: Vec<ShortestPaths> = vertices.iter().map(|&s| sssp(g, s)).collect::<Result<_>>()?;
    let mut edges = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        for (j, &vj) in vertices.iter().enumerate().skip(i + 1) {
            let d = t.dist[vj];
            if !d.is_finite() {
                bail!(Infeasible, "vertices {} and {} are not connected", vertices[i], vj);
            }
            edges.push((i, j, d));
        }
    }
    let graph = WeightedGraph::new(vertices.len(), edges)?;
    Ok(MetricClosure { graph, vertices, trees })
}

/// Symmetric `n x n` matrix of nonnegative reals with zero diagonal;
/// `f64::INFINITY` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn zeros(n: usize) -> Self {
        DistanceMatrix { n, data: vec![0.0; n * n] }
    }

    /// Build from `f(i, j)` for `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, f(i, j))?;
            }
        }
        Ok(m)
    }

    pub fn from_shortest_paths(g: &WeightedGraph) -> Self {
        let n = g.vertex_count();
        let mut m = Self::zeros(n);
        for sp in all_pairs(g) {
            for j in 0..n {
                m.data[sp.source * n + j] = sp.dist[j];
            }
        }
        m
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        if i == j {
            if value != 0.0 {
                bail!(Argument, "diagonal entry ({i},{i}) must be zero");
            }
            return Ok(());
        }
        if value.is_nan() || value < 0.0 {
            bail!(Argument, "entry ({i},{j}) = {value} is not a nonnegative distance");
        }
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
        Ok(())
    }

    /// Distinct off-diagonal values, increasing.
    pub fn distinct_values(&self) -> Vec<f64> {
        let mut vals = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                vals.push(self.get(i, j));
            }
        }
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        vals
    }
}
