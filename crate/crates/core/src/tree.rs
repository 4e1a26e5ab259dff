//! Tree solutions and the structural checks every solver output passes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{bail, Result};
use crate::graph::{Edge, WeightedGraph};

/// A tree on a vertex subset, as returned by every solver.
#[derive(Debug, Clone, PartialEq)]
pub struct KTreeSolution {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    /// Edges sorted by endpoint pair.
    pub edges: Vec<Edge>,
    pub cost: f64,
    pub diameter: f64,
    pub solver_tag: String,
}

impl KTreeSolution {
    /// Validates that `edges` form a tree exactly on `vertices` (edge
    /// endpoints are added to the vertex set) and computes cost and diameter.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = usize>,
        edges: Vec<Edge>,
        tag: impl Into<String>,
    ) -> Result<Self> {
        let mut set: BTreeSet<usize> = vertices.into_iter().collect();
        for e in &edges {
            set.insert(e.u);
            set.insert(e.v);
        }
        let vertices: Vec<usize> = set.into_iter().collect();
        let mut edges: Vec<Edge> = edges.into_iter().map(|e| Edge::new(e.u, e.v, e.w)).collect();
        edges.sort_by_key(Edge::key);
        check_tree(&vertices, &edges)?;
        let cost = edges.iter().map(|e| e.w).sum();
        let diameter = tree_diameter(&vertices, &edges);
        Ok(KTreeSolution { vertices, edges, cost, diameter, solver_tag: tag.into() })
    }

    pub fn single(v: usize, tag: impl Into<String>) -> Self {
        KTreeSolution { vertices: vec![v], edges: Vec::new(), cost: 0.0, diameter: 0.0, solver_tag: tag.into() }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.solver_tag = tag.into();
        self
    }

    /// Maps vertex ids through `map` (e.g. local component ids to global ids).
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        let edges = self.edges.iter().map(|e| Edge::new(map[e.u], map[e.v], e.w)).collect();
        Self::from_edges(self.vertices.iter().map(|&v| map[v]), edges, self.solver_tag.clone())
    }

    /// Every edge must exist in `g` with the same weight, and the stored
    /// cost must match the edge sum.
    pub fn check_against(&self, g: &WeightedGraph) -> Result<()> {
        check_tree(&self.vertices, &self.edges)?;
        for e in &self.edges {
            match g.weight(e.u, e.v) {
                Some(w) if w == e.w => {}
                Some(w) => bail!(Validation, "edge ({},{}) has weight {} but graph has {w}", e.u, e.v, e.w),
                None => bail!(Validation, "edge ({},{}) is not in the graph", e.u, e.v),
            }
        }
        let sum: f64 = self.edges.iter().map(|e| e.w).sum();
        if !crate::approx_eq(sum, self.cost) {
            bail!(Validation, "cost {} does not match edge sum {sum}", self.cost);
        }
        Ok(())
    }

    /// The crate-wide tie-break: lower cost first, then the
    /// lexicographically smaller sorted edge list.
    pub fn cmp_quality(&self, other: &Self) -> Ordering {
        self.cost.total_cmp(&other.cost).then_with(|| {
            let a = self.edges.iter().map(Edge::key);
            let b = other.edges.iter().map(Edge::key);
            a.cmp(b).then_with(|| self.vertices.cmp(&other.vertices))
        })
    }

    pub fn max_degree(&self) -> usize {
        degree_map(&self.edges).values().copied().max().unwrap_or(0)
    }
}

/// Cost, diameter and degree sequence of a tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeMetrics {
    pub cost: f64,
    pub diameter: f64,
    /// `(vertex, degree)` sorted by vertex.
    pub degrees: Vec<(usize, usize)>,
}

/// Recomputes cost and diameter of `t`, validating its structure.
pub fn tree_metrics(t: &KTreeSolution) -> Result<TreeMetrics> {
    check_tree(&t.vertices, &t.edges)?;
    let deg = degree_map(&t.edges);
    let degrees = t.vertices.iter().map(|&v| (v, deg.get(&v).copied().unwrap_or(0))).collect();
    Ok(TreeMetrics {
        cost: t.edges.iter().map(|e| e.w).sum(),
        diameter: tree_diameter(&t.vertices, &t.edges),
        degrees,
    })
}

fn degree_map(edges: &[Edge]) -> BTreeMap<usize, usize> {
    let mut deg = BTreeMap::new();
    for e in edges {
        *deg.entry(e.u).or_insert(0) += 1;
        *deg.entry(e.v).or_insert(0) += 1;
    }
    deg
}

fn check_tree(vertices: &[usize], edges: &[Edge]) -> Result<()> {
    if vertices.is_empty() {
        bail!(Validation, "tree has no vertices");
    }
    if edges.len() + 1 != vertices.len() {
        bail!(Validation, "{} edges on {} vertices is not a tree", edges.len(), vertices.len());
    }
    let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut dsu = crate::graph::DisjointSets::new(vertices.len());
    for e in edges {
        let (Some(&a), Some(&b)) = (index.get(&e.u), index.get(&e.v)) else {
            bail!(Validation, "edge ({},{}) leaves the vertex set", e.u, e.v);
        };
        if e.u == e.v {
            bail!(Validation, "self-loop at {}", e.u);
        }
        if !dsu.union(a, b) {
            bail!(Validation, "edge ({},{}) closes a cycle", e.u, e.v);
        }
    }
    Ok(())
}

/// Adjacency lists of a tree keyed by vertex.
pub(crate) fn tree_adjacency(vertices: &[usize], edges: &[Edge]) -> BTreeMap<usize, Vec<(usize, f64)>> {
    let mut adj: BTreeMap<usize, Vec<(usize, f64)>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
    for e in edges {
        adj.entry(e.u).or_default().push((e.v, e.w));
        adj.entry(e.v).or_default().push((e.u, e.w));
    }
    adj
}

/// Distances from `root` along tree paths.
pub(crate) fn tree_distances(adj: &BTreeMap<usize, Vec<(usize, f64)>>, root: usize) -> BTreeMap<usize, f64> {
    let mut dist = BTreeMap::new();
    dist.insert(root, 0.0);
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        let dx = dist[&x];
        for &(y, w) in &adj[&x] {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(dx + w);
                stack.push(y);
            }
        }
    }
    dist
}

/// Weighted diameter via double sweep (exact on trees with nonnegative weights).
pub(crate) fn tree_diameter(vertices: &[usize], edges: &[Edge]) -> f64 {
    if edges.is_empty() {
        return 0.0;
    }
    let adj = tree_adjacency(vertices, edges);
    let far = |from: usize| {
        tree_distances(&adj, from)
            .into_iter()
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("nonempty")
    };
    let (a, _) = far(vertices[0]);
    far(a).1
}

/// Repeatedly deletes the leaf with the largest `key` until `target`
/// vertices remain. `key(leaf, incident_weight)` must be a total order.
pub(crate) fn remove_leaves_until<K: Ord>(
    vertices: &[usize],
    edges: &[Edge],
    target: usize,
    mut key: impl FnMut(usize, f64) -> K,
) -> (Vec<usize>, Vec<Edge>) {
    let mut adj = tree_adjacency(vertices, edges);
    let mut alive: BTreeSet<usize> = vertices.iter().copied().collect();
    while alive.len() > target {
        let leaf = alive
            .iter()
            .filter(|v| adj[v].len() == 1)
            .map(|&v| (key(v, adj[&v][0].1), v))
            .max_by(|a, b| a.0.cmp(&b.0))
            .map(|(_, v)| v)
            .expect("a tree with two or more vertices has a leaf");
        let (nb, _) = adj[&leaf][0];
        adj.get_mut(&nb).unwrap().retain(|&(x, _)| x != leaf);
        adj.get_mut(&leaf).unwrap().clear();
        alive.remove(&leaf);
    }
    let kept = edges
        .iter()
        .filter(|e| alive.contains(&e.u) && alive.contains(&e.v))
        .copied()
        .collect();
    (alive.into_iter().collect(), kept)
}

/// Repeatedly deletes leaves for which `keep` is false.
pub(crate) fn strip_leaves(
    vertices: &[usize],
    edges: &[Edge],
    mut keep: impl FnMut(usize) -> bool,
) -> (Vec<usize>, Vec<Edge>) {
    let mut adj = tree_adjacency(vertices, edges);
    let mut alive: BTreeSet<usize> = vertices.iter().copied().collect();
    loop {
        let doomed: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|v| adj[v].len() <= 1 && alive.len() > 1 && !keep(*v))
            .take(1)
            .collect();
        let Some(&leaf) = doomed.first() else { break };
        if let Some(&(nb, _)) = adj[&leaf].first() {
            adj.get_mut(&nb).unwrap().retain(|&(x, _)| x != leaf);
        }
        adj.get_mut(&leaf).unwrap().clear();
        alive.remove(&leaf);
    }
    let kept = edges
        .iter()
        .filter(|e| alive.contains(&e.u) && alive.contains(&e.v))
        .copied()
        .collect();
    (alive.into_iter().collect(), kept)
}
