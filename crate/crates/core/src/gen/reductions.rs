//! Hardness gadgets. Each reduction carries translators that turn a witness
//! for the source problem into one for the produced instance and back.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{bail, Result};
use crate::graph::{DistanceMatrix, Edge, WeightedGraph};
use crate::oracles::{for_each_spanning_tree, tree_dists, OracleBudget};
use crate::short_trees::{evaluate_hu, HuInstance};
use crate::tree::{remove_leaves_until, strip_leaves, KTreeSolution};

/// Witness translation between a source problem and its produced instance.
pub trait ReductionCertificate {
    type SourceWitness;
    type TargetWitness;
    fn forward(&self, witness: &Self::SourceWitness) -> Result<Self::TargetWitness>;
    fn backward(&self, witness: &Self::TargetWitness) -> Result<Self::SourceWitness>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SteinerWeights {
    /// Gadget paths of weight 0, original edges 1, everything else a large sentinel.
    ZeroOneInf,
    /// Gadget stars of weight 1, original edges 2, everything else 3.
    OneTwoThree,
}

impl std::str::FromStr for SteinerWeights {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "01inf" => Ok(SteinerWeights::ZeroOneInf),
            "123" => Ok(SteinerWeights::OneTwoThree),
            other => bail!(Parse, "unknown weight variant '{other}' (expected 01inf or 123)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteinerReduction {
    pub source: WeightedGraph,
    pub terminals: Vec<usize>,
    pub m: usize,
    pub weights: SteinerWeights,
    /// New vertices per terminal.
    pub x: usize,
    pub graph: WeightedGraph,
    pub k: usize,
    pub budget: f64,
    /// `gadgets[i]` are the new vertices hung from `terminals[i]`, path order.
    pub gadgets: Vec<Vec<usize>>,
}

/// Steiner tree with at most `m` edges → kMST within a budget.
pub fn gen_steiner_to_kmst(
    g: &WeightedGraph,
    terminals: &[usize],
    m: usize,
    weights: SteinerWeights,
) -> Result<SteinerReduction> {
    let n = g.vertex_count();
    let terminals: Vec<usize> = terminals.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if terminals.is_empty() {
        bail!(Argument, "terminal set is empty");
    }
    if let Some(&bad) = terminals.iter().find(|&&t| t >= n) {
        bail!(Argument, "terminal {bad} is not a vertex of the {n}-vertex graph");
    }
    if weights == SteinerWeights::OneTwoThree && (!g.is_connected() || m + 1 > n) {
        bail!(Argument, "the 1/2/3 variant needs a connected graph and M <= |V| - 1");
    }
    let r = terminals.len();
    let x = n - r + 1;
    let total = n + r * x;
    let gadgets: Vec<Vec<usize>> = (0..r).map(|i| (n + i * x..n + (i + 1) * x).collect()).collect();
    let (gadget_w, original_w, other_w) = match weights {
        SteinerWeights::ZeroOneInf => (0.0, 1.0, 2.0 * (total * total) as f64),
        SteinerWeights::OneTwoThree => (1.0, 2.0, 3.0),
    };
    let mut special = BTreeMap::new();
    for e in g.edges() {
        special.insert(e.key(), original_w);
    }
    for (t, gadget) in terminals.iter().zip(&gadgets) {
        for (i, &v) in gadget.iter().enumerate() {
            let from = match weights {
                SteinerWeights::ZeroOneInf if i > 0 => gadget[i - 1],
                _ => *t,
            };
            special.insert((from.min(v), from.max(v)), gadget_w);
        }
    }
    let graph = WeightedGraph::complete(total, |i, j| special.get(&(i, j)).copied().unwrap_or(other_w))?;
    let (k, budget) = match weights {
        SteinerWeights::ZeroOneInf => (r * (x + 1), m as f64),
        SteinerWeights::OneTwoThree => (r * x + m + 1, (r * x + 2 * m) as f64),
    };
    Ok(SteinerReduction { source: g.clone(), terminals, m, weights, x, graph, k, budget, gadgets })
}

impl SteinerReduction {
    fn lift(&self, e: &Edge) -> Edge {
        Edge::new(e.u, e.v, self.graph.weight(e.u, e.v).unwrap_or(f64::INFINITY))
    }
}

impl ReductionCertificate for SteinerReduction {
    type SourceWitness = Vec<Edge>;
    type TargetWitness = KTreeSolution;

    fn forward(&self, steiner: &Vec<Edge>) -> Result<KTreeSolution> {
        let n = self.source.vertex_count();
        if let Some(e) = steiner.iter().find(|e| !self.source.has_edge(e.u, e.v)) {
            bail!(Validation, "({}, {}) is not an edge of the source graph", e.u, e.v);
        }
        let s = KTreeSolution::from_edges(self.terminals.iter().copied(), steiner.clone(), "steiner")?;
        if s.edges.len() > self.m {
            bail!(Validation, "Steiner tree has {} edges, more than M = {}", s.edges.len(), self.m);
        }
        let mut vertices: BTreeSet<usize> = s.vertices.iter().copied().collect();
        let mut edges: Vec<Edge> = s.edges.iter().map(|e| self.lift(e)).collect();
        for (t, gadget) in self.terminals.iter().zip(&self.gadgets) {
            for (i, &v) in gadget.iter().enumerate() {
                let from = match self.weights {
                    SteinerWeights::ZeroOneInf if i > 0 => gadget[i - 1],
                    _ => *t,
                };
                vertices.insert(v);
                edges.push(self.lift(&Edge::new(from, v, 0.0)));
            }
        }
        // the 1/2/3 variant pads with original vertices, the other trims gadget ends
        let mut frontier: VecDeque<usize> = s.vertices.iter().copied().collect();
        while vertices.len() < self.k {
            let Some(u) = frontier.pop_front() else {
                bail!(Validation, "graph too small to pad the tree to k = {}", self.k);
            };
            for &(v, _) in self.source.neighbors(u) {
                if vertices.len() < self.k && vertices.insert(v) {
                    edges.push(self.lift(&Edge::new(u, v, 0.0)));
                    frontier.push_back(v);
                }
            }
        }
        let vertices: Vec<usize> = vertices.into_iter().collect();
        let (vertices, edges) = remove_leaves_until(&vertices, &edges, self.k, |v, _| (v >= n, v));
        KTreeSolution::from_edges(vertices, edges, "steiner-gadget")
    }

    fn backward(&self, t: &KTreeSolution) -> Result<Vec<Edge>> {
        t.check_against(&self.graph)?;
        if t.size() < self.k {
            bail!(Validation, "tree has {} vertices, need k = {}", t.size(), self.k);
        }
        if t.cost > self.budget * (1.0 + crate::REL_TOL) {
            bail!(Validation, "tree costs {} over the budget {}", t.cost, self.budget);
        }
        let n = self.source.vertex_count();
        let inner: Vec<usize> = t.vertices.iter().copied().filter(|&v| v < n).collect();
        if let Some(missing) = self.terminals.iter().find(|r| inner.binary_search(r).is_err()) {
            bail!(Validation, "tree misses terminal {missing}");
        }
        let edges: Vec<Edge> = t
            .edges
            .iter()
            .filter(|e| e.u < n && e.v < n)
            .map(|e| Edge::new(e.u, e.v, self.source.weight(e.u, e.v).unwrap_or(f64::INFINITY)))
            .collect();
        let inner_tree = KTreeSolution::from_edges(inner, edges, "steiner")?;
        let (_, edges) = strip_leaves(&inner_tree.vertices, &inner_tree.edges, |v| self.terminals.contains(&v));
        if edges.len() > self.m {
            bail!(Validation, "recovered Steiner tree has {} edges, more than M = {}", edges.len(), self.m);
        }
        Ok(edges)
    }
}

/// Fewest-edge tree of `g` spanning `terminals`, by enumerating supersets.
pub fn min_steiner_edges(g: &WeightedGraph, terminals: &[usize]) -> Option<Vec<Edge>> {
    let n = g.vertex_count();
    let required: BTreeSet<usize> = terminals.iter().copied().collect();
    let optional: Vec<usize> = (0..n).filter(|v| !required.contains(v)).collect();
    let mut masks: Vec<u64> = (0..1u64 << optional.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let mut set: Vec<usize> = required.iter().copied().collect();
        set.extend(optional.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        set.sort_unstable();
        let (sub, map) = g.induced(&set);
        if sub.is_connected() {
            let tree = crate::graph::mst_forest(&sub);
            return Some(tree.iter().map(|e| Edge::new(map[e.u], map[e.v], e.w)).collect());
        }
    }
    None
}

/// A 3-CNF formula over variables `1..=vars`; negative literals are negations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<[i64; 3]>,
}

impl Cnf {
    pub fn new(clauses: Vec<[i64; 3]>) -> Result<Self> {
        if clauses.is_empty() {
            bail!(Parse, "formula has no clauses");
        }
        for c in &clauses {
            if c.contains(&0) {
                bail!(Parse, "literal 0 is not allowed");
            }
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                bail!(Parse, "clause {c:?} repeats a literal");
            }
        }
        let vars = clauses.iter().flatten().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0);
        Ok(Cnf { vars, clauses })
    }

    /// One clause per line, literals as signed integers, optional trailing
    /// `0`. Lines starting with `c` or `p` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut clauses = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('p') {
                continue;
            }
            let mut lits = Vec::new();
            for tok in line.split_whitespace() {
                let v: i64 = tok.parse().map_err(|_| crate::Error::Parse(format!("line {}: bad literal '{tok}'", no + 1)))?;
                lits.push(v);
            }
            if lits.last() == Some(&0) {
                lits.pop();
            }
            let clause: [i64; 3] = lits
                .as_slice()
                .try_into()
                .map_err(|_| crate::Error::Parse(format!("line {}: clause has {} literals, need 3", no + 1, lits.len())))?;
            clauses.push(clause);
        }
        Cnf::new(clauses)
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)))
    }

    /// Lexicographically first satisfying assignment, by enumeration.
    pub fn solve(&self) -> Option<Vec<bool>> {
        (0..1u64 << self.vars)
            .map(|m| (0..self.vars).map(|i| m >> i & 1 == 1).collect::<Vec<_>>())
            .find(|a| self.eval(a))
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{} {} {} 0", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatParams {
    pub a: f64,
    pub c: f64,
    pub d_far: f64,
}

impl Default for SatParams {
    fn default() -> Self {
        SatParams { a: 1.0, c: 1.0, d_far: 5.0 }
    }
}

/// Node 0 is the true node, then `x_i`, `¬x_i` for each variable, then clauses.
#[derive(Debug, Clone, PartialEq)]
pub struct SatReduction {
    pub formula: Cnf,
    pub params: SatParams,
    pub instance: HuInstance,
    pub threshold: f64,
}

pub fn gen_3sat_diamcost(formula: &Cnf, params: SatParams) -> Result<SatReduction> {
    let SatParams { a, c, d_far } = params;
    if !(a > 0.0 && c > 0.0 && d_far > 4.0 * a * c) {
        bail!(Argument, "need a > 0, c > 0 and d_far > 4ac");
    }
    let formula = Cnf::new(formula.clauses.clone())?;
    let n = 1 + 2 * formula.vars + formula.clauses.len();
    let mut d = DistanceMatrix::from_fn(n, |_, _| d_far)?;
    let mut r = DistanceMatrix::from_fn(n, |_, _| a)?;
    for v in 0..formula.vars {
        let (x, nx) = (1 + 2 * v, 2 + 2 * v);
        d.set(x, nx, c)?;
        r.set(x, nx, 4.0 * a)?;
        d.set(0, x, c)?;
        d.set(0, nx, c)?;
    }
    let mut red = SatReduction { formula, params, instance: HuInstance::new(d.clone(), r)?, threshold: 4.0 * a * c };
    for (j, clause) in red.formula.clauses.iter().enumerate() {
        for &l in clause {
            d.set(red.clause_node(j), red.literal_node(l), c)?;
        }
    }
    red.instance.d = d;
    Ok(red)
}

impl SatReduction {
    pub fn literal_node(&self, lit: i64) -> usize {
        1 + 2 * (lit.unsigned_abs() as usize - 1) + usize::from(lit < 0)
    }

    pub fn clause_node(&self, j: usize) -> usize {
        1 + 2 * self.formula.vars + j
    }

    /// Graph of the pairs at distance `c`. A tree using any other pair costs
    /// at least `a·d_far`, above the threshold.
    pub fn cheap_graph(&self) -> WeightedGraph {
        let n = self.instance.n();
        let c = self.params.c;
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        WeightedGraph::new(n, pairs.filter(|&(i, j)| self.instance.d.get(i, j) == c).map(|(i, j)| (i, j, c)).collect::<Vec<_>>())
            .expect("valid pairs")
    }

    /// First spanning tree of the cheap graph within the threshold, if any.
    pub fn decide(&self, budget: &OracleBudget) -> Result<Option<KTreeSolution>> {
        let n = self.instance.n();
        let mut found = None;
        for_each_spanning_tree(&self.cheap_graph(), budget, |t| {
            if found.is_some() {
                return;
            }
            let tree = KTreeSolution::from_edges(0..n, t.to_vec(), "sat3-oracle").expect("enumerated tree");
            let cost = evaluate_hu(&tree, &self.instance).expect("spanning tree").diameter;
            if cost <= self.threshold * (1.0 + crate::REL_TOL) {
                found = Some(tree);
            }
        })?;
        Ok(found)
    }
}

impl ReductionCertificate for SatReduction {
    type SourceWitness = Vec<bool>;
    type TargetWitness = KTreeSolution;

    fn forward(&self, assignment: &Vec<bool>) -> Result<KTreeSolution> {
        if assignment.len() != self.formula.vars || !self.formula.eval(assignment) {
            bail!(Validation, "assignment does not satisfy the formula");
        }
        let mut pairs = Vec::new();
        for (v, &val) in assignment.iter().enumerate() {
            let lit = if val { v as i64 + 1 } else { -(v as i64 + 1) };
            pairs.push((0, self.literal_node(lit)));
            pairs.push((self.literal_node(lit), self.literal_node(-lit)));
        }
        for (j, clause) in self.formula.clauses.iter().enumerate() {
            let l = clause.iter().find(|&&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0)).expect("satisfied");
            pairs.push((self.clause_node(j), self.literal_node(*l)));
        }
        self.instance.tree(pairs, "sat3-gadget")
    }

    fn backward(&self, t: &KTreeSolution) -> Result<Vec<bool>> {
        let cost = evaluate_hu(t, &self.instance)?.diameter;
        if cost > self.threshold * (1.0 + crate::REL_TOL) {
            bail!(Validation, "diameter cost {cost} exceeds the threshold {}", self.threshold);
        }
        let n = self.instance.n();
        let dist = tree_dists(n, &t.edges, |e| self.instance.d.get(e.u, e.v));
        let assignment: Vec<bool> =
            (0..self.formula.vars).map(|v| dist[0][1 + 2 * v] < dist[0][2 + 2 * v]).collect();
        if !self.formula.eval(&assignment) {
            bail!(Validation, "tree does not encode a satisfying assignment");
        }
        Ok(assignment)
    }
}

/// Independent set of size `k` → communication k-tree with all `d = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsReduction {
    pub source: WeightedGraph,
    pub k: usize,
    pub m: usize,
    pub instance: HuInstance,
    /// `k(k-1)`, the optimum is at most this iff an independent set exists.
    pub threshold: f64,
    /// `M·k(k-1)`, the bound an `M`-approximation certifies.
    pub approx_bound: f64,
}

pub fn gen_is_to_comm_ktree(g: &WeightedGraph, k: usize, m: usize) -> Result<IsReduction> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        bail!(Argument, "need 1 <= k <= {n}, got {k}");
    }
    if m == 0 {
        bail!(Argument, "M must be at least 1");
    }
    let pairs = (k * k.saturating_sub(1)) as f64;
    let heavy = m as f64 * pairs + 1.0;
    let d = DistanceMatrix::from_fn(n, |_, _| 1.0)?;
    let r = DistanceMatrix::from_fn(n, |i, j| if g.has_edge(i, j) { heavy } else { 1.0 })?;
    Ok(IsReduction {
        source: g.clone(),
        k,
        m,
        instance: HuInstance::new(d, r)?,
        threshold: pairs,
        approx_bound: m as f64 * pairs,
    })
}

/// Communication cost of a tree over its own vertices.
fn ktree_comm_cost(inst: &HuInstance, t: &KTreeSolution) -> f64 {
    let dist = tree_dists(inst.n(), &t.edges, |e| inst.d.get(e.u, e.v));
    let mut cost = 0.0;
    for (a, &i) in t.vertices.iter().enumerate() {
        for &j in &t.vertices[a + 1..] {
            cost += inst.r.get(i, j) * dist[i][j];
        }
    }
    cost
}

impl ReductionCertificate for IsReduction {
    type SourceWitness = Vec<usize>;
    type TargetWitness = KTreeSolution;

    fn forward(&self, set: &Vec<usize>) -> Result<KTreeSolution> {
        let set: Vec<usize> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if set.len() != self.k || set.iter().any(|&v| v >= self.source.vertex_count()) {
            bail!(Validation, "need {} distinct vertices", self.k);
        }
        if set.iter().any(|&a| set.iter().any(|&b| self.source.has_edge(a, b))) {
            bail!(Validation, "vertex set is not independent");
        }
        let edges = set[1..].iter().map(|&v| Edge::new(set[0], v, 1.0)).collect();
        KTreeSolution::from_edges(set, edges, "is-gadget")
    }

    fn backward(&self, t: &KTreeSolution) -> Result<Vec<usize>> {
        if t.size() != self.k {
            bail!(Validation, "tree has {} vertices, need k = {}", t.size(), self.k);
        }
        let cost = ktree_comm_cost(&self.instance, t);
        if cost > self.approx_bound * (1.0 + crate::REL_TOL) {
            bail!(Validation, "communication cost {cost} exceeds M·k(k-1) = {}", self.approx_bound);
        }
        let set = t.vertices.clone();
        if set.iter().any(|&a| set.iter().any(|&b| self.source.has_edge(a, b))) {
            bail!(Validation, "tree vertices are not independent");
        }
        Ok(set)
    }
}

/// Cheapest communication-cost tree on any `k` vertices, by enumerating
/// vertex subsets and the spanning trees of each.
pub fn oracle_comm_ktree(inst: &HuInstance, k: usize, budget: &OracleBudget) -> Result<(f64, KTreeSolution)> {
    let n = inst.n();
    if k == 0 || k > n {
        bail!(Argument, "need 1 <= k <= {n}, got {k}");
    }
    if n > budget.max_vertices {
        bail!(Resource, "oracle limited to {} vertices, got {n}", budget.max_vertices);
    }
    let mut best: Option<(f64, KTreeSolution)> = None;
    let mut set: Vec<usize> = (0..k).collect();
    loop {
        let local = WeightedGraph::complete(k, |i, j| inst.d.get(set[i], set[j]))?;
        for_each_spanning_tree(&local, budget, |es| {
            let edges = es.iter().map(|e| Edge::new(set[e.u], set[e.v], e.w)).collect();
            let t = KTreeSolution::from_edges(set.iter().copied(), edges, "oracle").expect("enumerated tree");
            let cost = ktree_comm_cost(inst, &t);
            if best.as_ref().is_none_or(|b| cost < b.0) {
                best = Some((cost, t));
            }
        })?;
        // next k-subset in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| set[i] < n - k + i) else { break };
        set[i] += 1;
        for j in i + 1..k {
            set[j] = set[j - 1] + 1;
        }
    }
    Ok(best.expect("at least one subset"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> WeightedGraph {
        WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn steiner_gadget_on_a_path() {
        let b = OracleBudget::default();
        let red = gen_steiner_to_kmst(&path3(), &[0, 2], 2, SteinerWeights::ZeroOneInf).unwrap();
        assert_eq!((red.x, red.k), (2, 6));
        let opt = crate::oracles::oracle_kmst(&red.graph, red.k, None, &b).unwrap();
        assert!(opt.cost <= red.budget);
        assert_eq!(red.backward(&opt).unwrap().len(), 2);
        let tight = gen_steiner_to_kmst(&path3(), &[0, 2], 1, SteinerWeights::ZeroOneInf).unwrap();
        assert!(crate::oracles::oracle_kmst(&tight.graph, tight.k, None, &b).unwrap().cost > tight.budget);
    }

    #[test]
    fn steiner_forward_round_trips() {
        let s = min_steiner_edges(&path3(), &[0, 2]).unwrap();
        for w in [SteinerWeights::ZeroOneInf, SteinerWeights::OneTwoThree] {
            let red = gen_steiner_to_kmst(&path3(), &[0, 2], 2, w).unwrap();
            let t = red.forward(&s).unwrap();
            assert_eq!(t.size(), red.k);
            assert!(t.cost <= red.budget);
            assert_eq!(red.backward(&t).unwrap().len(), 2);
        }
    }

    #[test]
    fn all_terminals_is_spanning_tree_feasibility() {
        let red = gen_steiner_to_kmst(&path3(), &[0, 1, 2], 2, SteinerWeights::ZeroOneInf).unwrap();
        assert_eq!(red.x, 1);
        assert_eq!(min_steiner_edges(&path3(), &[0, 1, 2]).unwrap().len(), 2);
    }

    #[test]
    fn steiner_argument_errors() {
        let g = WeightedGraph::new(3, [(0, 1, 1.0)]).unwrap();
        assert!(gen_steiner_to_kmst(&g, &[], 1, SteinerWeights::ZeroOneInf).is_err());
        assert!(gen_steiner_to_kmst(&g, &[5], 1, SteinerWeights::ZeroOneInf).is_err());
        assert!(gen_steiner_to_kmst(&g, &[0], 1, SteinerWeights::OneTwoThree).is_err());
        assert!(gen_steiner_to_kmst(&path3(), &[0], 3, SteinerWeights::OneTwoThree).is_err());
    }

    #[test]
    fn single_clause_gadget() {
        let f = Cnf::parse("1 2 3 0\n").unwrap();
        let red = gen_3sat_diamcost(&f, SatParams::default()).unwrap();
        assert_eq!(red.instance.n(), 8);
        assert_eq!(red.threshold, 4.0);
        let t = red.forward(&vec![true, false, false]).unwrap();
        assert!(evaluate_hu(&t, &red.instance).unwrap().diameter <= 4.0);
        assert!(red.backward(&t).is_ok());
        let b = OracleBudget::default();
        let found = red.decide(&b).unwrap().expect("satisfiable");
        assert!(f.eval(&red.backward(&found).unwrap()));
        let (opt, _) = crate::oracles::oracle_hu_tree(&red.instance, crate::oracles::HuObjective::DiameterCost, &b).unwrap();
        assert!(opt <= 4.0);
    }

    #[test]
    fn cnf_validation() {
        assert!(matches!(Cnf::parse("1 1 1"), Err(crate::Error::Parse(_))));
        assert!(matches!(Cnf::parse("1 2"), Err(crate::Error::Parse(_))));
        assert!(matches!(Cnf::parse("c nothing\n"), Err(crate::Error::Parse(_))));
        let f = Cnf::parse("p cnf 3 1\n1 -2 3 0").unwrap();
        assert_eq!(Cnf::parse(&f.to_string()).unwrap(), f);
        let bad = SatParams { d_far: 4.0, ..SatParams::default() };
        assert!(gen_3sat_diamcost(&f, bad).is_err());
        let p = SatParams::default();
        assert!(p.d_far > 4.0 * p.a * p.c);
    }

    #[test]
    fn independent_set_gadget() {
        let b = OracleBudget::default();
        let tri = WeightedGraph::complete(3, |_, _| 1.0).unwrap();
        let red = gen_is_to_comm_ktree(&tri, 2, 1).unwrap();
        assert_eq!(red.instance.r.get(0, 1), 3.0);
        let (opt, _) = oracle_comm_ktree(&red.instance, 2, &b).unwrap();
        assert!(opt >= 3.0 && opt > red.approx_bound);

        let g = WeightedGraph::new(4, [(2, 3, 1.0)]).unwrap();
        let red = gen_is_to_comm_ktree(&g, 2, 1).unwrap();
        let (opt, t) = oracle_comm_ktree(&red.instance, 2, &b).unwrap();
        assert_eq!(opt, 1.0);
        assert!(red.backward(&t).is_ok());
        assert_eq!(red.forward(&vec![0, 1]).unwrap().cost, 1.0);

        let red = gen_is_to_comm_ktree(&g, 1, 1).unwrap();
        assert_eq!(oracle_comm_ktree(&red.instance, 1, &b).unwrap().0, 0.0);
    }
}
