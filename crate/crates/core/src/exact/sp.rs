use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{bail, Result};
use crate::graph::{DisjointSets, Edge, WeightedGraph};
use crate::tree::KTreeSolution;

pub const TAG: &str = "sp-dp";

/// Series-parallel parse tree over two-terminal graphs. Terminals are
/// identified by vertex id.
#[derive(Debug, Clone, PartialEq)]
pub enum SPParseTree {
    Edge { u: usize, v: usize, w: f64 },
    Series(Box<SPParseTree>, Box<SPParseTree>),
    Parallel(Box<SPParseTree>, Box<SPParseTree>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Series,
    Parallel,
}

impl SPParseTree {
    pub fn edge(u: usize, v: usize, w: f64) -> Self {
        SPParseTree::Edge { u, v, w }
    }

    pub fn series(a: SPParseTree, b: SPParseTree) -> Self {
        SPParseTree::Series(Box::new(a), Box::new(b))
    }

    pub fn parallel(a: SPParseTree, b: SPParseTree) -> Self {
        SPParseTree::Parallel(Box::new(a), Box::new(b))
    }

    pub fn terminals(&self) -> (usize, usize) {
        match self {
            SPParseTree::Edge { u, v, .. } => (*u, *v),
            SPParseTree::Series(a, b) => (a.terminals().0, b.terminals().1),
            SPParseTree::Parallel(a, _) => a.terminals(),
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        self.collect_edges(&mut out);
        out
    }

    fn collect_edges(&self, out: &mut Vec<Edge>) {
        match self {
            SPParseTree::Edge { u, v, w } => out.push(Edge::new(*u, *v, *w)),
            SPParseTree::Series(a, b) | SPParseTree::Parallel(a, b) => {
                a.collect_edges(out);
                b.collect_edges(out);
            }
        }
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.edges().iter().flat_map(|e| [e.u, e.v]).collect()
    }

    /// Checks terminal identification and that the two sides of every
    /// composition share exactly the identified terminals.
    pub fn validate(&self) -> Result<()> {
        self.check().map(|_| ())
    }

    fn check(&self) -> Result<BTreeSet<usize>> {
        match self {
            SPParseTree::Edge { u, v, w } => {
                if u == v {
                    bail!(Validation, "self-loop at {u}");
                }
                if !w.is_finite() || *w < 0.0 {
                    bail!(Validation, "edge ({u},{v}) has weight {w}");
                }
                Ok(BTreeSet::from([*u, *v]))
            }
            SPParseTree::Series(a, b) => {
                let (va, vb) = (a.check()?, b.check()?);
                let mid = a.terminals().1;
                if mid != b.terminals().0 {
                    bail!(Validation, "series join {} vs {}", mid, b.terminals().0);
                }
                let shared: Vec<usize> = va.intersection(&vb).copied().collect();
                if shared != [mid] {
                    bail!(Validation, "series parts share {shared:?}, expected only {mid}");
                }
                Ok(va.union(&vb).copied().collect())
            }
            SPParseTree::Parallel(a, b) => {
                let (va, vb) = (a.check()?, b.check()?);
                let (ta, tb) = (a.terminals(), b.terminals());
                if ta != tb {
                    bail!(Validation, "parallel terminals {ta:?} vs {tb:?}");
                }
                let shared: BTreeSet<usize> = va.intersection(&vb).copied().collect();
                if shared != BTreeSet::from([ta.0, ta.1]) {
                    bail!(Validation, "parallel parts share {shared:?}, expected only {ta:?}");
                }
                let ka: BTreeSet<(usize, usize)> = a.edges().iter().map(Edge::key).collect();
                if b.edges().iter().any(|e| ka.contains(&e.key())) {
                    bail!(Validation, "parallel edge between {} and {}", ta.0, ta.1);
                }
                Ok(va.union(&vb).copied().collect())
            }
        }
    }

    /// Composed graph on ids `0..=max id`.
    pub fn graph(&self) -> Result<WeightedGraph> {
        let es = self.edges();
        let n = es.iter().map(|e| e.v + 1).max().unwrap_or(0);
        WeightedGraph::new(n, es.iter().map(|e| (e.u, e.v, e.w)))
    }

    /// Parses `(e u v w)`, `(s A B)` and `(p A B)` forms.
    pub fn parse(text: &str) -> Result<Self> {
        let spaced = text.replace('(', " ( ").replace(')', " ) ");
        let tokens: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let tree = parse_node(&tokens, &mut pos)?;
        if pos != tokens.len() {
            bail!(Parse, "trailing input after parse tree");
        }
        Ok(tree)
    }
}

fn parse_node(tokens: &[&str], pos: &mut usize) -> Result<SPParseTree> {
    let mut next = || -> Result<&str> {
        let t = tokens.get(*pos).copied();
        *pos += 1;
        match t {
            Some(t) => Ok(t),
            None => bail!(Parse, "unexpected end of parse tree"),
        }
    };
    if next()? != "(" {
        bail!(Parse, "expected '(' at token {}", *pos - 1);
    }
    let head = next()?;
    let node = match head {
        "e" => {
            let mut nums = [0.0; 3];
            for slot in nums.iter_mut() {
                let t = tokens.get(*pos).copied().unwrap_or(")");
                *pos += 1;
                *slot = t.parse().map_err(|_| crate::Error::Parse(format!("bad number '{t}'")))?;
            }
            let id = |x: f64| -> Result<usize> {
                if x < 0.0 || x.fract() != 0.0 {
                    bail!(Parse, "vertex id {x} is not a nonnegative integer");
                }
                Ok(x as usize)
            };
            SPParseTree::edge(id(nums[0])?, id(nums[1])?, nums[2])
        }
        "s" | "p" => {
            let a = parse_node(tokens, pos)?;
            let b = parse_node(tokens, pos)?;
            if head == "s" {
                SPParseTree::series(a, b)
            } else {
                SPParseTree::parallel(a, b)
            }
        }
        other => bail!(Parse, "unknown form '{other}'"),
    };
    if tokens.get(*pos) != Some(&")") {
        bail!(Parse, "expected ')' at token {}", *pos);
    }
    *pos += 1;
    Ok(node)
}

impl fmt::Display for SPParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SPParseTree::Edge { u, v, w } => write!(f, "(e {u} {v} {w})"),
            SPParseTree::Series(a, b) => write!(f, "(s {a} {b})"),
            SPParseTree::Parallel(a, b) => write!(f, "(p {a} {b})"),
        }
    }
}

/// How a partial forest meets the terminals `(t1, t2)` of its subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Class {
    /// No edges at all.
    Empty,
    /// One tree avoiding both terminals.
    Free,
    /// One tree through `t1` only.
    First,
    /// One tree through `t2` only.
    Second,
    /// One tree through both terminals.
    Both,
    /// Two trees, one through each terminal.
    Split,
}

pub const CLASSES: [Class; 6] = [Class::Empty, Class::Free, Class::First, Class::Second, Class::Both, Class::Split];

impl Class {
    fn blocks(self, t: (usize, usize)) -> Vec<Vec<usize>> {
        match self {
            Class::Empty => vec![],
            Class::Free => vec![vec![]],
            Class::First => vec![vec![t.0]],
            Class::Second => vec![vec![t.1]],
            Class::Both => vec![vec![t.0, t.1]],
            Class::Split => vec![vec![t.0], vec![t.1]],
        }
    }
}

type Source = Option<((Class, usize), (Class, usize))>;

/// `entry(class, i)`: cheapest forest of that class with `i` edges.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTable {
    pub terminals: (usize, usize),
    slots: BTreeMap<Class, Vec<Option<(f64, Source)>>>,
}

impl CostTable {
    fn empty(terminals: (usize, usize), k: usize) -> Self {
        let slots = CLASSES.iter().map(|&c| (c, vec![None; k])).collect();
        CostTable { terminals, slots }
    }

    pub fn primitive(u: usize, v: usize, w: f64, k: usize) -> Self {
        let mut t = Self::empty((u, v), k);
        t.put(Class::Empty, 0, 0.0, None);
        if k > 1 {
            t.put(Class::Both, 1, w, None);
        }
        t
    }

    /// Largest edge count stored plus one.
    pub fn width(&self) -> usize {
        self.slots[&Class::Empty].len()
    }

    pub fn cost(&self, class: Class, i: usize) -> f64 {
        self.slots[&class].get(i).copied().flatten().map_or(f64::INFINITY, |(c, _)| c)
    }

    fn source(&self, class: Class, i: usize) -> Source {
        self.slots[&class][i].expect("finite entry").1
    }

    fn put(&mut self, class: Class, i: usize, cost: f64, src: Source) {
        let slot = &mut self.slots.get_mut(&class).unwrap()[i];
        if slot.is_none_or(|(c, _)| cost < c) {
            *slot = Some((cost, src));
        }
    }
}

/// Class of the union of a left forest and a right forest, or `None` when
/// the union has a cycle or strands a tree away from the terminals.
fn combine(lc: Class, lt: (usize, usize), rc: Class, rt: (usize, usize), pt: (usize, usize)) -> Option<Class> {
    let mut blocks = lc.blocks(lt);
    blocks.extend(rc.blocks(rt));
    let m = blocks.len();
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    for b in &blocks {
        for &v in b {
            let next = m + ids.len();
            ids.entry(v).or_insert(next);
        }
    }
    let mut dsu = DisjointSets::new(m + ids.len());
    for (bi, b) in blocks.iter().enumerate() {
        for v in b {
            if !dsu.union(bi, ids[v]) {
                return None;
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (bi, b) in blocks.iter().enumerate() {
        let g = groups.entry(dsu.find(bi)).or_default();
        g.extend(b.iter().copied().filter(|&v| v == pt.0 || v == pt.1));
    }
    let mut sets: Vec<Vec<usize>> = groups.into_values().map(|s| s.into_iter().collect()).collect();
    sets.sort();
    let (a, b) = pt;
    let (lo, hi) = (a.min(b), a.max(b));
    let first = |x: usize| if x == a { Class::First } else { Class::Second };
    match sets.as_slice() {
        [] => Some(Class::Empty),
        [s] if s.is_empty() => Some(Class::Free),
        [s] if s.len() == 1 => Some(first(s[0])),
        [s] if s.len() == 2 => Some(Class::Both),
        [s, t] if s == &[lo] && t == &[hi] => Some(Class::Split),
        _ => None,
    }
}

/// Table of a series or parallel composition from the children's tables.
pub fn compose_tables(left: &CostTable, right: &CostTable, rule: Rule, k: usize) -> Result<CostTable> {
    let (lt, rt) = (left.terminals, right.terminals);
    let pt = match rule {
        Rule::Series if lt.1 == rt.0 => (lt.0, rt.1),
        Rule::Parallel if lt == rt => lt,
        _ => bail!(Validation, "terminals {lt:?} and {rt:?} do not compose by {rule:?}"),
    };
    let mut out = CostTable::empty(pt, k);
    for &lc in &CLASSES {
        for &rc in &CLASSES {
            let Some(pc) = combine(lc, lt, rc, rt, pt) else { continue };
            for il in 0..k.min(left.width()) {
                let cl = left.cost(lc, il);
                if !cl.is_finite() {
                    continue;
                }
                for ir in 0..(k - il).min(right.width()) {
                    let cr = right.cost(rc, ir);
                    if cr.is_finite() {
                        out.put(pc, il + ir, cl + cr, Some(((lc, il), (rc, ir))));
                    }
                }
            }
        }
    }
    Ok(out)
}

struct Solved<'a> {
    node: &'a SPParseTree,
    table: CostTable,
    kids: Option<Box<(Solved<'a>, Solved<'a>)>>,
}

fn solve(node: &SPParseTree, k: usize) -> Result<Solved<'_>> {
    match node {
        SPParseTree::Edge { u, v, w } => Ok(Solved { node, table: CostTable::primitive(*u, *v, *w, k), kids: None }),
        SPParseTree::Series(a, b) | SPParseTree::Parallel(a, b) => {
            let rule = if matches!(node, SPParseTree::Series(..)) { Rule::Series } else { Rule::Parallel };
            let (sa, sb) = (solve(a, k)?, solve(b, k)?);
            let table = compose_tables(&sa.table, &sb.table, rule, k)?;
            Ok(Solved { node, table, kids: Some(Box::new((sa, sb))) })
        }
    }
}

fn rebuild(s: &Solved<'_>, class: Class, i: usize, out: &mut Vec<Edge>) {
    match (&s.kids, s.node) {
        (None, SPParseTree::Edge { u, v, w }) => {
            if i == 1 {
                out.push(Edge::new(*u, *v, *w));
            }
        }
        (Some(kids), _) => {
            if let Some(((lc, il), (rc, ir))) = s.table.source(class, i) {
                rebuild(&kids.0, lc, il, out);
                rebuild(&kids.1, rc, ir, out);
            }
        }
        _ => unreachable!(),
    }
}

/// Exact kMST on a series-parallel graph given by its parse tree.
pub fn sp_kmst(t: &SPParseTree, k: usize) -> Result<KTreeSolution> {
    t.validate()?;
    let vertices = t.vertices();
    if k == 0 {
        bail!(Argument, "k must be positive");
    }
    if k > vertices.len() {
        bail!(Infeasible, "k = {k} exceeds the {} vertices", vertices.len());
    }
    if k == 1 {
        return Ok(KTreeSolution::single(*vertices.first().unwrap(), TAG));
    }
    let solved = solve(t, k)?;
    let (class, cost) = [Class::Free, Class::First, Class::Second, Class::Both]
        .into_iter()
        .map(|c| (c, solved.table.cost(c, k - 1)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    if !cost.is_finite() {
        bail!(Infeasible, "no tree with {} edges", k - 1);
    }
    let mut edges = Vec::with_capacity(k - 1);
    rebuild(&solved, class, k - 1, &mut edges);
    KTreeSolution::from_edges(std::iter::empty(), edges, TAG)
}
