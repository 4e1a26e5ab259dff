//! Plain-text instance formats. Writers use the shortest decimal that reads
//! back to the same `f64`, so every format round-trips exactly. Lines that
//! are blank or start with `#` are ignored by the readers.

use std::fmt::Write as _;

use crate::error::{bail, Error, Result};
use crate::exact::SPParseTree;
use crate::geometry::{Metric, Point, PointSet2D};
use crate::graph::{DistanceMatrix, WeightedGraph};
use crate::short_trees::HuInstance;

/// `x` with 9 significant digits, in the style of C's `%.9g`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..9).contains(&exp) {
        let m = trim_zeros(mantissa);
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    trim_zeros(&format!("{:.*}", (8 - exp) as usize, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("line {line}: missing {what}")))?;
    tok.parse().map_err(|_| Error::Parse(format!("line {line}: bad {what} '{tok}'")))
}

fn no_more<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match toks.next() {
        Some(extra) => bail!(Parse, "line {line}: unexpected '{extra}'"),
        None => Ok(()),
    }
}

/// First line `n m`, then `m` lines `u v w`.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.w).expect("string write");
    }
    out
}

pub fn read_graph(text: &str) -> Result<WeightedGraph> {
    let mut lines = content_lines(text);
    let Some((no, head)) = lines.next() else { bail!(Parse, "empty graph file") };
    let mut t = head.split_whitespace();
    let n: usize = field(t.next(), no, "vertex count")?;
    let m: usize = field(t.next(), no, "edge count")?;
    no_more(t, no)?;
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let mut t = line.split_whitespace();
        let u: usize = field(t.next(), no, "endpoint")?;
        let v: usize = field(t.next(), no, "endpoint")?;
        let w: f64 = field(t.next(), no, "weight")?;
        no_more(t, no)?;
        edges.push((u, v, w));
    }
    if edges.len() != m {
        bail!(Parse, "header promises {m} edges, found {}", edges.len());
    }
    WeightedGraph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
}

/// First line `n metric`, then `n` lines `x y`.
pub fn write_points(ps: &PointSet2D) -> String {
    let mut out = format!("{} {}\n", ps.len(), ps.metric.name());
    for p in &ps.points {
        writeln!(out, "{} {}", p.x, p.y).expect("string write");
    }
    out
}

pub fn read_points(text: &str) -> Result<PointSet2D> {
    let mut lines = content_lines(text);
    let Some((no, head)) = lines.next() else { bail!(Parse, "empty point file") };
    let mut t = head.split_whitespace();
    let n: usize = field(t.next(), no, "point count")?;
    let metric: Metric = match t.next() {
        Some(m) => m.parse()?,
        None => Metric::Euclidean,
    };
    no_more(t, no)?;
    let mut points = Vec::with_capacity(n);
    for (no, line) in lines {
        let mut t = line.split_whitespace();
        let x: f64 = field(t.next(), no, "x")?;
        let y: f64 = field(t.next(), no, "y")?;
        no_more(t, no)?;
        points.push(Point::new(x, y));
    }
    if points.len() != n {
        bail!(Parse, "header promises {n} points, found {}", points.len());
    }
    PointSet2D::new(points, metric).map_err(|e| Error::Parse(e.to_string()))
}

/// First line `n`, then one line `i j d r` for every pair `i < j`.
pub fn write_hu(inst: &HuInstance) -> String {
    let n = inst.n();
    let mut out = format!("{n}\n");
    for i in 0..n {
        for j in i + 1..n {
            writeln!(out, "{i} {j} {} {}", inst.d.get(i, j), inst.r.get(i, j)).expect("string write");
        }
    }
    out
}

pub fn read_hu(text: &str) -> Result<HuInstance> {
    let mut lines = content_lines(text);
    let Some((no, head)) = lines.next() else { bail!(Parse, "empty hu file") };
    let mut t = head.split_whitespace();
    let n: usize = field(t.next(), no, "vertex count")?;
    no_more(t, no)?;
    let mut d = DistanceMatrix::zeros(n);
    let mut r = DistanceMatrix::zeros(n);
    let mut seen = vec![false; n * n];
    for (no, line) in lines {
        let mut t = line.split_whitespace();
        let i: usize = field(t.next(), no, "i")?;
        let j: usize = field(t.next(), no, "j")?;
        let dv: f64 = field(t.next(), no, "d")?;
        let rv: f64 = field(t.next(), no, "r")?;
        no_more(t, no)?;
        if i >= j || j >= n {
            bail!(Parse, "line {no}: need i < j < {n}");
        }
        if std::mem::replace(&mut seen[i * n + j], true) {
            bail!(Parse, "line {no}: pair ({i}, {j}) repeated");
        }
        d.set(i, j, dv).map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
        r.set(i, j, rv).map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
    }
    let count = seen.iter().filter(|&&s| s).count();
    if count != n * n.saturating_sub(1) / 2 {
        bail!(Parse, "{count} of {} pairs given", n * n.saturating_sub(1) / 2);
    }
    HuInstance::new(d, r).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_sp(t: &SPParseTree) -> String {
    format!("{t}\n")
}

pub fn read_sp(text: &str) -> Result<SPParseTree> {
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let t = SPParseTree::parse(&body)?;
    t.validate()?;
    Ok(t)
}
