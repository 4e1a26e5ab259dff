//! Spanning trees under Hu's distance/requirement framework for the two
//! polynomial cases: zero-or-uniform distances with two requirement values
//! (communication cost) and uniform distances with two requirement values
//! (diameter cost).

use std::collections::{BTreeMap, VecDeque};

use crate::error::{bail, Result};
use crate::graph::{DisjointSets, DistanceMatrix, Edge, WeightedGraph};
use crate::tree::{tree_adjacency, KTreeSolution};

use super::cut_tree::gomory_hu;

/// Pairwise distances `d` and requirements `r` on `n` vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct HuInstance {
    pub d: DistanceMatrix,
    pub r: DistanceMatrix,
}

impl HuInstance {
    pub fn new(d: DistanceMatrix, r: DistanceMatrix) -> Result<Self> {
        if d.len() != r.len() {
            bail!(Argument, "distance matrix has {} rows, requirement matrix {}", d.len(), r.len());
        }
        if d.distinct_values().iter().chain(r.distinct_values().iter()).any(|v| !v.is_finite()) {
            bail!(Argument, "matrix entries must be finite");
        }
        Ok(HuInstance { d, r })
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    /// Tree on all vertices using `pairs` as edges, weighted by `d`.
    pub fn tree(&self, pairs: impl IntoIterator<Item = (usize, usize)>, tag: &str) -> Result<KTreeSolution> {
        let edges = pairs.into_iter().map(|(a, b)| Edge::new(a, b, self.d.get(a, b))).collect();
        KTreeSolution::from_edges(0..self.n(), edges, tag)
    }

    pub fn star(&self, root: usize, tag: &str) -> KTreeSolution {
        self.tree((0..self.n()).filter(|&v| v != root).map(|v| (root, v)), tag).expect("a star is a tree")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuCosts {
    pub communication: f64,
    pub diameter: f64,
}

/// Communication cost and diameter cost of a spanning tree, with tree
/// distances measured by the instance's `d` values.
pub fn evaluate_hu(tree: &KTreeSolution, inst: &HuInstance) -> Result<HuCosts> {
    let n = inst.n();
    if tree.vertices != (0..n).collect::<Vec<_>>() || tree.edges.len() + 1 != n {
        bail!(Argument, "tree does not span the {n} instance vertices");
    }
    let adj = tree_adjacency(&tree.vertices, &tree.edges);
    let mut costs = HuCosts { communication: 0.0, diameter: 0.0 };
    for s in 0..n {
        let mut dist = vec![f64::NAN; n];
        dist[s] = 0.0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[&u] {
                if dist[v].is_nan() {
                    dist[v] = dist[u] + inst.d.get(u, v);
                    stack.push(v);
                }
            }
        }
        for t in s + 1..n {
            let c = inst.r.get(s, t) * dist[t];
            costs.communication += c;
            costs.diameter = costs.diameter.max(c);
        }
    }
    Ok(costs)
}

fn at_most_two(m: &DistanceMatrix, what: &str) -> Result<Vec<f64>> {
    let vals = m.distinct_values();
    if vals.len() > 2 {
        bail!(Argument, "{what} takes {} distinct values, at most two allowed", vals.len());
    }
    Ok(vals)
}

/// Minimum communication-cost spanning tree when every `d` is `0` or a single
/// `c > 0` and `r` takes at most two values.
pub fn min_comm_tree_two_r_zero_c(inst: &HuInstance) -> Result<KTreeSolution> {
    const TAG: &str = "hu-comm";
    let n = inst.n();
    if n == 0 {
        bail!(Argument, "empty instance");
    }
    at_most_two(&inst.r, "r")?;
    let dvals = at_most_two(&inst.d, "d")?;
    if dvals.iter().filter(|&&v| v > 0.0).count() > 1 {
        bail!(Argument, "d must take only the values 0 and one c > 0");
    }
    let mut zero = DisjointSets::new(n);
    let mut zero_adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if inst.d.get(i, j) == 0.0 {
                zero.union(i, j);
                zero_adj[i].push(j);
                zero_adj[j].push(i);
            }
        }
    }
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rep = Vec::new();
    let mut super_of = vec![0; n];
    for v in 0..n {
        let root = zero.find(v);
        let id = *index.entry(root).or_insert_with(|| {
            rep.push(v);
            rep.len() - 1
        });
        super_of[v] = id;
    }
    let m = rep.len();
    let mut req = vec![vec![0.0; m]; m];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (super_of[i], super_of[j]);
            if a != b {
                req[a][b] += inst.r.get(i, j);
                req[b][a] += inst.r.get(i, j);
            }
        }
    }
    let mut pairs = Vec::with_capacity(n - 1);
    if m > 1 {
        let caps = WeightedGraph::complete(m, |a, b| req[a][b])?;
        for e in gomory_hu(&caps)?.edges() {
            pairs.push((rep[e.u], rep[e.v]));
        }
    }
    let mut seen = vec![false; n];
    for &r in &rep {
        seen[r] = true;
        let mut q = VecDeque::from([r]);
        while let Some(u) = q.pop_front() {
            for &v in &zero_adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    pairs.push((u, v));
                    q.push_back(v);
                }
            }
        }
    }
    inst.tree(pairs, TAG)
}

/// Minimum diameter-cost spanning tree when `d` is uniform and `r` takes
/// two values `a > b` (one value is the all-equal case).
pub fn min_diamcost_tree_uniform_d_two_r(inst: &HuInstance) -> Result<KTreeSolution> {
    const TAG: &str = "hu-diamcost";
    let n = inst.n();
    if n == 0 {
        bail!(Argument, "empty instance");
    }
    if inst.d.distinct_values().len() > 1 {
        bail!(Argument, "d must be uniform");
    }
    let rvals = at_most_two(&inst.r, "r")?;
    if n <= 2 || rvals.len() < 2 {
        return Ok(inst.star(0, TAG));
    }
    let a = rvals[1];
    let mut forest = DisjointSets::new(n);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if inst.r.get(i, j) == a {
                if !forest.union(i, j) {
                    return Ok(inst.star(0, TAG));
                }
                pairs.push((i, j));
            }
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        members.entry(forest.find(v)).or_default().push(v);
    }
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in &pairs {
        adj[i].push(j);
        adj[j].push(i);
    }
    // (hop diameter, center) of each forest tree with at least one edge
    let mut trees: Vec<(usize, usize)> = Vec::new();
    let mut isolated = Vec::new();
    for vs in members.values() {
        if vs.len() == 1 {
            isolated.push(vs[0]);
        } else {
            trees.push(center(&adj, vs[0]));
        }
    }
    let root = trees.iter().max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1))).expect("some a-pair exists").1;
    for &(_, c) in &trees {
        if c != root {
            pairs.push((root, c));
        }
    }
    pairs.extend(isolated.into_iter().map(|v| (root, v)));
    let built = inst.tree(pairs, TAG)?;
    let c = inst.d.distinct_values()[0];
    if evaluate_hu(&built, inst)?.diameter < 2.0 * a * c {
        Ok(built)
    } else {
        Ok(inst.star(0, TAG))
    }
}

/// Hop diameter and a center (smaller id on ties) of the tree containing `start`.
fn center(adj: &[Vec<usize>], start: usize) -> (usize, usize) {
    let bfs = |s: usize| {
        let mut par = BTreeMap::from([(s, usize::MAX)]);
        let mut order = vec![s];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &v in &adj[u] {
                if let std::collections::btree_map::Entry::Vacant(e) = par.entry(v) {
                    e.insert(u);
                    order.push(v);
                }
            }
            i += 1;
        }
        (order, par)
    };
    let (order, _) = bfs(start);
    let far = *order.last().unwrap();
    let (order, par) = bfs(far);
    let mut path = vec![*order.last().unwrap()];
    while par[path.last().unwrap()] != usize::MAX {
        path.push(par[path.last().unwrap()]);
    }
    let len = path.len() - 1;
    let c = if len % 2 == 0 { path[len / 2] } else { path[len / 2].min(path[len / 2 + 1]) };
    (len, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, d: impl FnMut(usize, usize) -> f64, r: impl FnMut(usize, usize) -> f64) -> HuInstance {
        HuInstance::new(DistanceMatrix::from_fn(n, d).unwrap(), DistanceMatrix::from_fn(n, r).unwrap()).unwrap()
    }

    #[test]
    fn star_costs() {
        let h = inst(3, |_, _| 1.0, |_, _| 1.0);
        let c = evaluate_hu(&h.star(0, "s"), &h).unwrap();
        assert_eq!((c.communication, c.diameter), (4.0, 2.0));
        let z = inst(3, |_, _| 1.0, |_, _| 0.0);
        let c = evaluate_hu(&z.star(1, "s"), &z).unwrap();
        assert_eq!((c.communication, c.diameter), (0.0, 0.0));
    }

    #[test]
    fn comm_three_vertices() {
        let h = inst(3, |_, _| 1.0, |i, j| if i == 0 || j == 0 { 5.0 } else { 1.0 });
        let t = min_comm_tree_two_r_zero_c(&h).unwrap();
        assert_eq!(t.edges.iter().map(Edge::key).collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert_eq!(evaluate_hu(&t, &h).unwrap().communication, 12.0);
    }

    #[test]
    fn comm_zero_components_collapse() {
        let h = inst(4, |i, j| if (i, j) == (0, 1) || (i, j) == (2, 3) { 0.0 } else { 2.0 }, |_, _| 1.0);
        let t = min_comm_tree_two_r_zero_c(&h).unwrap();
        assert!(t.edges.contains(&Edge::new(0, 1, 0.0)));
        assert!(t.edges.contains(&Edge::new(2, 3, 0.0)));
        assert_eq!(evaluate_hu(&t, &h).unwrap().communication, 8.0);
    }

    #[test]
    fn diamcost_examples() {
        let h = inst(4, |_, _| 1.0, |i, j| if (i, j) == (0, 1) || (i, j) == (1, 2) { 10.0 } else { 1.0 });
        let t = min_diamcost_tree_uniform_d_two_r(&h).unwrap();
        assert_eq!(t.edges.iter().map(Edge::key).collect::<Vec<_>>(), vec![(0, 1), (1, 2), (1, 3)]);
        assert_eq!(evaluate_hu(&t, &h).unwrap().diameter, 10.0);
        let tri = inst(4, |_, _| 1.0, |i, j| if j < 3 && i < 3 { 7.0 } else { 1.0 });
        let t = min_diamcost_tree_uniform_d_two_r(&tri).unwrap();
        assert_eq!(evaluate_hu(&t, &tri).unwrap().diameter, 14.0);
        let flat = inst(5, |_, _| 3.0, |_, _| 2.0);
        let t = min_diamcost_tree_uniform_d_two_r(&flat).unwrap();
        assert_eq!(evaluate_hu(&t, &flat).unwrap().diameter, 12.0);
    }

    #[test]
    fn rejects_wrong_structure() {
        let h = inst(3, |i, j| (i + j) as f64, |_, _| 1.0);
        assert!(min_comm_tree_two_r_zero_c(&h).is_err());
        assert!(min_diamcost_tree_uniform_d_two_r(&h).is_err());
        let h = inst(4, |_, _| 1.0, |i, j| (i + j) as f64);
        assert!(min_comm_tree_two_r_zero_c(&h).is_err());
    }
}
