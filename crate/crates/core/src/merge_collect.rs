//! Merge-Collect: the 2√k approximation for k-node minimum spanning trees on
//! arbitrary weighted graphs, and the k-Steiner wrapper built on it.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;

use crate::error::{bail, Result};
use crate::graph::{kruskal, metric_closure, Edge, OrdF64, WeightedGraph};
use crate::tree::{remove_leaves_until, strip_leaves, KTreeSolution};

pub const TAG: &str = "merge-collect";

/// Smallest `s` with `s * s >= k`.
pub fn ceil_sqrt(k: usize) -> usize {
    let mut r = (k as f64).sqrt() as usize;
    while r * r < k {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= k {
        r -= 1;
    }
    r
}

/// Clusters of the merge phase. A cluster is named by its smallest vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    partition: Vec<usize>,
    sizes: BTreeMap<usize, usize>,
    trees: BTreeMap<usize, Vec<Edge>>,
    iteration: usize,
}

impl ClusterState {
    pub fn singletons(n: usize) -> Self {
        ClusterState {
            partition: (0..n).collect(),
            sizes: (0..n).map(|v| (v, 1)).collect(),
            trees: (0..n).map(|v| (v, Vec::new())).collect(),
            iteration: 0,
        }
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.partition[v]
    }

    /// `(cluster id, size)` in id order.
    pub fn clusters(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sizes.iter().map(|(&c, &s)| (c, s))
    }

    pub fn cluster_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[&c]
    }

    pub fn tree(&self, c: usize) -> &[Edge] {
        &self.trees[&c]
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.partition.len()).filter(|&v| self.partition[v] == c).collect()
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn largest(&self) -> usize {
        self.sizes.values().copied().max().unwrap_or(0)
    }

    /// Both collect preconditions with threshold `⌈√k⌉`: some `⌈√k⌉`
    /// clusters reach `k` vertices together and no single cluster does.
    pub fn collect_ready(&self, k: usize) -> bool {
        if self.largest() >= k {
            return false;
        }
        let mut sizes: Vec<usize> = self.sizes.values().copied().collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes.iter().take(ceil_sqrt(k)).sum::<usize>() >= k
    }

    fn merge(&mut self, e: Edge) {
        let (a, b) = (self.partition[e.u], self.partition[e.v]);
        debug_assert_ne!(a, b);
        let (keep, gone) = (a.min(b), a.max(b));
        for c in self.partition.iter_mut() {
            if *c == gone {
                *c = keep;
            }
        }
        let s = self.sizes.remove(&gone).unwrap();
        *self.sizes.get_mut(&keep).unwrap() += s;
        let t = self.trees.remove(&gone).unwrap();
        let tree = self.trees.get_mut(&keep).unwrap();
        tree.extend(t);
        tree.push(e);
        self.iteration += 1;
    }
}

/// Merges the two clusters joined by the cheapest inter-cluster edge
/// (ties: smaller endpoint pair). Fails when no such edge exists.
pub fn merge_step(state: &ClusterState, g: &WeightedGraph) -> Result<ClusterState> {
    if state.partition.len() != g.vertex_count() {
        bail!(Argument, "cluster state covers {} vertices, graph has {}", state.partition.len(), g.vertex_count());
    }
    let Some(e) = g
        .edges()
        .iter()
        .filter(|e| state.partition[e.u] != state.partition[e.v])
        .min_by(|a, b| a.cmp_weight(b))
    else {
        bail!(Infeasible, "merge stalled: no inter-cluster edge");
    };
    let mut next = state.clone();
    next.merge(*e);
    Ok(next)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollectOutcome {
    pub root_cluster: usize,
    pub radius: f64,
    pub solution: KTreeSolution,
}

/// Deletes heaviest-edge leaves (ties: larger id) until `k` vertices remain.
pub fn prune_to_size(tree: &KTreeSolution, k: usize) -> Result<KTreeSolution> {
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if tree.size() < k {
        bail!(Argument, "tree has {} vertices, fewer than k = {k}", tree.size());
    }
    let (vertices, edges) = remove_leaves_until(&tree.vertices, &tree.edges, k, |v, w| (OrdF64(w), v));
    KTreeSolution::from_edges(vertices, edges, tree.solver_tag.clone())
}

struct Aux {
    ids: Vec<usize>,
    sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
    link: Vec<Vec<Option<Edge>>>,
}

impl Aux {
    fn new(state: &ClusterState, g: &WeightedGraph) -> Self {
        let ids: Vec<usize> = state.sizes.keys().copied().collect();
        let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let c = ids.len();
        let mut members = vec![Vec::new(); c];
        for v in 0..state.partition.len() {
            members[index[&state.partition[v]]].push(v);
        }
        let mut link: Vec<Vec<Option<Edge>>> = vec![vec![None; c]; c];
        for e in g.edges() {
            let (a, b) = (index[&state.partition[e.u]], index[&state.partition[e.v]]);
            if a == b {
                continue;
            }
            let better = match &link[a][b] {
                Some(cur) => e.cmp_weight(cur).is_lt(),
                None => true,
            };
            if better {
                link[a][b] = Some(*e);
                link[b][a] = Some(*e);
            }
        }
        let sizes = ids.iter().map(|c| state.sizes[c]).collect();
        Aux { ids, sizes, members, link }
    }

    fn dijkstra(&self, root: usize) -> (Vec<f64>, Vec<usize>) {
        let c = self.ids.len();
        let mut dist = vec![f64::INFINITY; c];
        let mut parent = vec![usize::MAX; c];
        let mut done = vec![false; c];
        dist[root] = 0.0;
        loop {
            let Some(u) = (0..c)
                .filter(|&i| !done[i] && dist[i].is_finite())
                .min_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)))
            else {
                break;
            };
            done[u] = true;
            for v in 0..c {
                if let Some(e) = &self.link[u][v] {
                    let nd = dist[u] + e.w;
                    if !done[v] && nd < dist[v] {
                        dist[v] = nd;
                        parent[v] = u;
                    }
                }
            }
        }
        (dist, parent)
    }

    /// Least radius at which the root plus its `s - 1` largest neighbours
    /// reach `k` vertices, with the chosen clusters.
    fn radius(&self, root: usize, dist: &[f64], s: usize, k: usize) -> Option<(f64, Vec<usize>)> {
        let mut order: Vec<usize> = (0..self.ids.len()).filter(|&i| i != root && dist[i].is_finite()).collect();
        order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
        let budget = s - 1;
        let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
        let mut sum = self.sizes[root];
        let mut found = if sum >= k { Some(0.0) } else { None };
        let mut pos = 0;
        while found.is_none() && pos < order.len() {
            let r = dist[order[pos]];
            while pos < order.len() && dist[order[pos]] == r {
                let sz = self.sizes[order[pos]];
                if budget > 0 {
                    if heap.len() < budget {
                        heap.push(Reverse(sz));
                        sum += sz;
                    } else if heap.peek().is_some_and(|m| m.0 < sz) {
                        sum -= heap.pop().unwrap().0;
                        heap.push(Reverse(sz));
                        sum += sz;
                    }
                }
                pos += 1;
            }
            if sum >= k {
                found = Some(r);
            }
        }
        let r = found?;
        let mut within: Vec<usize> = order.into_iter().filter(|&i| dist[i] <= r).collect();
        within.sort_by(|&a, &b| {
            self.sizes[b].cmp(&self.sizes[a]).then(dist[a].total_cmp(&dist[b])).then(a.cmp(&b))
        });
        within.truncate(budget);
        within.push(root);
        Some((r, within))
    }

    fn expand(&self, state: &ClusterState, parent: &[usize], chosen: &[usize], k: usize) -> KTreeSolution {
        let mut ports: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        let mut links: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut edges: Vec<Edge> = Vec::new();
        for &c in chosen {
            ports.entry(c).or_default();
            let mut x = c;
            while parent[x] != usize::MAX {
                let p = parent[x];
                if !links.insert((p, x)) {
                    break;
                }
                let e = self.link[p][x].expect("tree link");
                let (inp, inx) = if state.partition[e.u] == self.ids[p] { (e.u, e.v) } else { (e.v, e.u) };
                ports.entry(p).or_default().insert(inp);
                ports.entry(x).or_default().insert(inx);
                edges.push(e);
                x = p;
            }
        }
        let chosen: BTreeSet<usize> = chosen.iter().copied().collect();
        let mut vertices = Vec::new();
        for (&c, port) in &ports {
            let tree = state.tree(self.ids[c]);
            if chosen.contains(&c) {
                vertices.extend_from_slice(&self.members[c]);
                edges.extend_from_slice(tree);
            } else {
                let (vs, es) = strip_leaves(&self.members[c], tree, |v| port.contains(&v));
                vertices.extend(vs);
                edges.extend(es);
            }
        }
        let full = KTreeSolution::from_edges(vertices, edges, TAG).expect("cluster expansion is a tree");
        prune_to_size(&full, k).expect("chosen clusters hold k vertices")
    }
}

/// One collect run on the current clusters; `None` when its preconditions fail.
pub fn collect_phase(state: &ClusterState, g: &WeightedGraph, k: usize) -> Option<CollectOutcome> {
    if k == 0 || !state.collect_ready(k) {
        return None;
    }
    let aux = Aux::new(state, g);
    let s = ceil_sqrt(k);
    let mut best: Option<CollectOutcome> = None;
    for root in 0..aux.ids.len() {
        let (dist, parent) = aux.dijkstra(root);
        let Some((r, chosen)) = aux.radius(root, &dist, s, k) else { continue };
        if best.as_ref().is_some_and(|b| r > b.radius) {
            continue;
        }
        let solution = aux.expand(state, &parent, &chosen, k);
        let better = match &best {
            None => true,
            Some(b) => r < b.radius || solution.cost < b.solution.cost,
        };
        if better {
            best = Some(CollectOutcome { root_cluster: aux.ids[root], radius: r, solution });
        }
    }
    best
}

/// Every tree produced by one run on a connected graph: the merge-phase
/// result first, then each collect outcome in iteration order.
pub fn merge_collect_candidates(g: &WeightedGraph, k: usize) -> Result<Vec<KTreeSolution>> {
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if !g.is_connected() || g.vertex_count() < k {
        bail!(Infeasible, "graph must be connected with at least k = {k} vertices");
    }
    if k == 1 {
        return Ok(vec![KTreeSolution::single(0, TAG)]);
    }
    let mut sorted = g.edges().to_vec();
    sorted.sort_by(Edge::cmp_weight);
    let mut state = ClusterState::singletons(g.vertex_count());
    let mut collected = Vec::new();
    let mut next = sorted.iter();
    while state.largest() < k {
        if let Some(out) = collect_phase(&state, g, k) {
            collected.push(out.solution);
        }
        let e = next
            .find(|e| state.partition[e.u] != state.partition[e.v])
            .expect("connected graph keeps merging");
        state.merge(*e);
    }
    let (&c, _) = state.sizes.iter().find(|(_, &s)| s >= k).unwrap();
    let full = KTreeSolution::from_edges(state.members(c), state.tree(c).to_vec(), TAG)?;
    let mut out = vec![prune_to_size(&full, k)?];
    out.extend(collected);
    Ok(out)
}

fn components_of_size(g: &WeightedGraph, k: usize) -> Result<Vec<Vec<usize>>> {
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    let comps = g.components();
    let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
    if largest < k {
        bail!(Infeasible, "component size {largest} < k");
    }
    Ok(comps.into_iter().filter(|c| c.len() >= k).collect())
}

/// Approximate minimum-weight tree on exactly `k` vertices.
pub fn merge_collect(g: &WeightedGraph, k: usize) -> Result<KTreeSolution> {
    let mut best: Option<KTreeSolution> = None;
    for comp in components_of_size(g, k)? {
        let (h, map) = g.induced(&comp);
        for t in merge_collect_candidates(&h, k)? {
            let t = t.relabel(&map)?;
            if best.as_ref().is_none_or(|b| t.cmp_quality(b).is_lt()) {
                best = Some(t);
            }
        }
    }
    Ok(best.expect("at least one component qualifies"))
}

/// Tree spanning at least `k` of `terminals`, via kMST on their metric closure.
pub fn k_steiner(g: &WeightedGraph, terminals: &[usize], k: usize) -> Result<KTreeSolution> {
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if k > terms.len() {
        bail!(Argument, "k = {k} exceeds the {} terminals", terms.len());
    }
    if let Some(&t) = terms.iter().find(|&&t| t >= g.vertex_count()) {
        bail!(Argument, "terminal {t} out of range");
    }
    let closure = metric_closure(g, Some(&terms))?;
    let inner = merge_collect(&closure.graph, k)?;
    if inner.edges.is_empty() {
        return Ok(KTreeSolution::single(closure.vertices[inner.vertices[0]], "k-steiner"));
    }
    let mut union: BTreeMap<(usize, usize), Edge> = BTreeMap::new();
    for e in &inner.edges {
        for p in closure.expand(e.u, e.v, g) {
            union.insert(p.key(), p);
        }
    }
    let union: Vec<Edge> = union.into_values().collect();
    let span = kruskal(g.vertex_count(), &union);
    let vertices: BTreeSet<usize> = span.iter().flat_map(|e| [e.u, e.v]).collect();
    let vertices: Vec<usize> = vertices.into_iter().collect();
    let term_set: BTreeSet<usize> = terms.iter().copied().collect();
    let (vs, es) = strip_leaves(&vertices, &span, |v| term_set.contains(&v));
    KTreeSolution::from_edges(vs, es, "k-steiner")
}
