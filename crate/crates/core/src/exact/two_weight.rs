use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{bail, Result};
use crate::graph::{kruskal, Edge, WeightedGraph};
use crate::tree::KTreeSolution;

pub const TAG: &str = "two-weight";

/// Exact kMST when the edges carry at most two distinct weights and the
/// light components can be joined pairwise by heavy edges.
pub fn two_weight_kmst(g: &WeightedGraph, k: usize) -> Result<KTreeSolution> {
    let n = g.vertex_count();
    let weights = g.distinct_weights();
    if weights.len() > 2 {
        bail!(Argument, "{} distinct edge weights, at most two allowed", weights.len());
    }
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if k > n {
        bail!(Infeasible, "k = {k} exceeds the {n} vertices");
    }
    let light = weights.first().copied().unwrap_or(0.0);
    let g1 = WeightedGraph::new(n, g.edges().iter().filter(|e| e.w == light).map(|e| (e.u, e.v, e.w)))?;
    let mut comps = g1.components();
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut r = 0;
    let mut total = 0;
    while total < k {
        total += comps[r].len();
        r += 1;
    }
    let mut edges = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(r);
    for (idx, comp) in comps[..r].iter().enumerate() {
        let want = if idx + 1 == r { comp.len() - (total - k) } else { comp.len() };
        let (vs, es) = bfs_prefix(&g1, comp[0], want);
        edges.extend(es);
        chosen.push(vs);
    }
    if r > 1 {
        let mut owner = vec![usize::MAX; n];
        for (c, vs) in chosen.iter().enumerate() {
            for &v in vs {
                owner[v] = c;
            }
        }
        // first heavy edge per pair of chosen components
        let mut best: BTreeMap<(usize, usize), Edge> = BTreeMap::new();
        for e in g.edges() {
            let (a, b) = (owner[e.u], owner[e.v]);
            if a != usize::MAX && b != usize::MAX && a != b {
                best.entry((a.min(b), a.max(b))).or_insert(*e);
            }
        }
        let links: Vec<Edge> = best.iter().map(|(&(a, b), e)| Edge::new(a, b, e.w)).collect();
        let joins = kruskal(r, &links);
        if joins.len() + 1 != r {
            bail!(
                Applicability,
                "the {r} chosen light components cannot be joined by {} heavy edges; take the metric closure first",
                r - 1
            );
        }
        edges.extend(joins.iter().map(|j| best[&j.key()]));
    }
    let vertices: Vec<usize> = chosen.into_iter().flatten().collect();
    KTreeSolution::from_edges(vertices, edges, TAG)
}

/// First `want` vertices reached by BFS from `s`, with their BFS tree edges.
fn bfs_prefix(g: &WeightedGraph, s: usize, want: usize) -> (Vec<usize>, Vec<Edge>) {
    let mut seen = BTreeSet::from([s]);
    let mut order = vec![s];
    let mut edges = Vec::new();
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &(v, w) in g.neighbors(u) {
            if order.len() == want {
                return (order, edges);
            }
            if seen.insert(v) {
                order.push(v);
                edges.push(Edge::new(u, v, w));
                q.push_back(v);
            }
        }
    }
    order.truncate(want);
    (order, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> WeightedGraph {
        let light = |i: usize, j: usize| (i < 3) == (j < 3);
        WeightedGraph::complete(6, |i, j| if light(i, j) { 1.0 } else { 10.0 }).unwrap()
    }

    #[test]
    fn two_triangles_k6_and_k3() {
        let g = two_triangles();
        let t = two_weight_kmst(&g, 6).unwrap();
        assert_eq!(t.cost, 14.0);
        t.check_against(&g).unwrap();
        let t = two_weight_kmst(&g, 3).unwrap();
        assert_eq!(t.cost, 2.0);
        assert_eq!(two_weight_kmst(&g, 5).unwrap().cost, 13.0);
    }

    #[test]
    fn rejects_three_weights_and_sparse_links() {
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)]).unwrap();
        assert!(matches!(two_weight_kmst(&g, 2), Err(crate::Error::Argument(_))));
        let g = WeightedGraph::new(5, [(0, 1, 1.0), (2, 3, 1.0), (1, 4, 5.0), (4, 2, 5.0)]).unwrap();
        assert!(matches!(two_weight_kmst(&g, 4), Err(crate::Error::Applicability(_))));
    }

    #[test]
    fn single_weight() {
        let g = WeightedGraph::complete(5, |_, _| 2.0).unwrap();
        assert_eq!(two_weight_kmst(&g, 4).unwrap().cost, 6.0);
        assert_eq!(two_weight_kmst(&g, 1).unwrap().cost, 0.0);
    }
}
