use crate::error::{bail, Result};
use crate::graph::{Edge, WeightedGraph};
use crate::tree::KTreeSolution;

pub const TAG: &str = "tree-dp";

struct Rooted {
    order: Vec<usize>,
    children: Vec<Vec<(usize, f64)>>,
}

fn root_at_zero(g: &WeightedGraph) -> Rooted {
    let n = g.vertex_count();
    let mut children = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut order = vec![0];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &(v, w) in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                children[u].push((v, w));
                order.push(v);
            }
        }
    }
    Rooted { order, children }
}

/// Exact kMST on a tree: for every vertex, the cheapest subtree hanging
/// from it with `j` vertices, merged over children knapsack-style.
pub fn tree_kmst(g: &WeightedGraph, k: usize) -> Result<KTreeSolution> {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() + 1 != n || !g.is_connected() {
        bail!(Argument, "input graph is not a tree");
    }
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if k > n {
        bail!(Infeasible, "k = {k} exceeds the {n} vertices");
    }
    let rooted = root_at_zero(g);
    let inf = f64::INFINITY;
    // best[v][j]: cheapest rooted subtree at v with j vertices (within v's subtree)
    let mut best: Vec<Vec<f64>> = vec![Vec::new(); n];
    // take[v][c][j]: vertices taken from child c when the first c+1 children give j
    let mut take: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for &v in rooted.order.iter().rev() {
        let mut cur = vec![inf; k + 1];
        cur[1] = 0.0;
        for &(c, w) in &rooted.children[v] {
            let child = &best[c];
            let mut next = cur.clone();
            let mut pick = vec![0usize; k + 1];
            for a in 1..=k {
                if !cur[a].is_finite() {
                    continue;
                }
                for b in 1..=k - a {
                    if child[b].is_finite() {
                        let cost = cur[a] + child[b] + w;
                        if cost < next[a + b] {
                            next[a + b] = cost;
                            pick[a + b] = b;
                        }
                    }
                }
            }
            take[v].push(pick);
            cur = next;
        }
        best[v] = cur;
    }
    let root = (0..n)
        .filter(|&v| best[v][k].is_finite())
        .min_by(|&a, &b| best[a][k].total_cmp(&best[b][k]).then(a.cmp(&b)))
        .expect("the root subtree holds all n vertices");
    let mut edges = Vec::with_capacity(k - 1);
    let mut stack = vec![(root, k)];
    while let Some((v, mut j)) = stack.pop() {
        for (idx, &(c, w)) in rooted.children[v].iter().enumerate().rev() {
            let b = take[v][idx][j];
            if b > 0 {
                edges.push(Edge::new(v, c, w));
                stack.push((c, b));
                j -= b;
            }
        }
    }
    KTreeSolution::from_edges([root], edges, TAG)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_window() {
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (1, 2, 4.0), (2, 3, 2.0)]).unwrap();
        let t = tree_kmst(&g, 3).unwrap();
        assert_eq!(t.cost, 5.0);
        assert_eq!(t.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn star_takes_cheapest_leaves() {
        let g = WeightedGraph::new(5, (1..5).map(|i| (0, i, i as f64))).unwrap();
        let t = tree_kmst(&g, 3).unwrap();
        assert_eq!(t.cost, 3.0);
        assert_eq!(t.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn rejects_non_trees() {
        let g = WeightedGraph::complete(3, |_, _| 1.0).unwrap();
        assert!(matches!(tree_kmst(&g, 2), Err(crate::Error::Argument(_))));
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(tree_kmst(&g, 2).is_err());
    }
}
