//! Command-line front end for the `shortk` solvers.
//!
//! [`run_command`] parses an argument vector, runs one solver, oracle or
//! generator and returns the exit code together with both output streams,
//! so the binary is a thin wrapper and tests need no subprocesses.

pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use shortk::convex::{circle_kmst, convex_kmst};
use shortk::exact::{sp_kmst, tree_kmst, two_weight_kmst, SPParseTree};
use shortk::gen::{
    gen_3sat_diamcost, gen_fig2, gen_fig4, gen_is_to_comm_ktree, gen_random, gen_steiner_to_kmst, min_steiner_edges,
    oracle_comm_ktree, Cnf, HuPreset, RandomInstance, RandomKind, RandomParams, SatParams, SteinerWeights,
};
use shortk::io::{fmt_num, read_graph, read_hu, read_points, read_sp, write_graph, write_hu, write_points, write_sp};
use shortk::merge_collect::{k_steiner, merge_collect};
use shortk::oracles::{oracle_hu_tree, oracle_kmst, oracle_min_diam_ktree, HuObjective, OracleBudget};
use shortk::plane::plane_kmst;
use shortk::short_trees::{
    evaluate_hu, min_comm_tree_two_r_zero_c, min_diamcost_tree_uniform_d_two_r, min_diameter_ktree, HuInstance,
};
use shortk::{Error, KTreeSolution, Metric, PointSet2D, Result, WeightedGraph};

#[derive(Parser, Debug)]
#[command(name = "shortk", version, about = "k-node spanning trees and short spanning trees")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Minimum spanning tree on k nodes.
    Kmst {
        #[arg(value_enum)]
        solver: KmstSolver,
        #[command(flatten)]
        input: Input,
    },
    /// Minimum-diameter tree on k nodes.
    Ktree {
        #[arg(value_enum)]
        solver: KtreeSolver,
        #[command(flatten)]
        input: Input,
    },
    /// Spanning trees under distance and requirement values.
    Hu {
        #[arg(value_enum)]
        objective: HuKind,
        #[command(flatten)]
        input: Input,
    },
    /// Exact answers by exhaustive search on small instances.
    Oracle {
        #[arg(value_enum)]
        problem: OracleKind,
        /// Objective for `oracle hu`.
        #[arg(long, value_enum, default_value = "comm")]
        objective: HuKind,
        #[command(flatten)]
        input: Input,
    },
    /// Write a generated instance.
    Gen(GenArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KmstSolver {
    Approx,
    Plane,
    Steiner,
    TwoWeight,
    Sp,
    Tree,
    Convex,
    Circle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KtreeSolver {
    Diam,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum HuKind {
    Comm,
    Diamcost,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OracleKind {
    Kmst,
    Diam,
    Hu,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Steiner,
    Sat3,
    Is,
    Fig2,
    Fig4,
    Random,
}

#[derive(Args, Debug)]
struct Input {
    /// Graph file: `n m`, then `u v w` lines.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Point file: `n [euclidean|rectilinear]`, then `x y` lines.
    #[arg(long, value_name = "FILE")]
    points: Option<PathBuf>,
    /// Distance/requirement file: `n`, then `i j d r` lines.
    #[arg(long, value_name = "FILE")]
    hu: Option<PathBuf>,
    /// Series-parallel parse tree as an s-expression.
    #[arg(long, value_name = "FILE")]
    parse: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    /// Overrides the metric named in the point file.
    #[arg(long, value_parser = parse_metric)]
    metric: Option<Metric>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated terminal ids.
    #[arg(long, value_delimiter = ',')]
    terminals: Vec<usize>,
    /// Render the tree over the input points.
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
    /// Also run the exhaustive oracle and report the ratio.
    #[arg(long)]
    oracle: bool,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Append the wall time to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    /// Source graph for `steiner` and `is`.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Formula for `sat3`: one clause of three literals per line.
    #[arg(long, value_name = "FILE")]
    cnf: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    /// Edge bound for `steiner`, approximation factor for `is`.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    terminals: Vec<usize>,
    #[arg(long, default_value = "01inf", value_parser = parse_weights)]
    weights: SteinerWeights,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 5.0)]
    d_far: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    opt_scale: f64,
    #[arg(long, value_parser = parse_kind)]
    kind: Option<RandomKind>,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 10)]
    max_weight: u32,
    #[arg(long, default_value = "3", value_parser = parse_preset)]
    preset: HuPreset,
    #[arg(long, value_parser = parse_metric)]
    metric: Option<Metric>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Attach oracle answers as comments when the instance is small enough.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn parse_metric(s: &str) -> std::result::Result<Metric, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_weights(s: &str) -> std::result::Result<SteinerWeights, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> std::result::Result<RandomKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_preset(s: &str) -> std::result::Result<HuPreset, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Cost,
    Diameter,
}

/// Everything printed for one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub solver_tag: String,
    pub digest: String,
    pub k: Option<usize>,
    pub measure: Measure,
    pub value: f64,
    pub tree: KTreeSolution,
    pub oracle: Option<f64>,
    pub ratio: Option<f64>,
    pub oracle_note: Option<String>,
    pub wall: Duration,
}

impl RunReport {
    fn new(tree: KTreeSolution, measure: Measure, value: f64, k: Option<usize>, digest: String) -> Self {
        RunReport {
            solver_tag: tree.solver_tag.clone(),
            digest,
            k,
            measure,
            value,
            tree,
            oracle: None,
            ratio: None,
            oracle_note: None,
            wall: Duration::ZERO,
        }
    }

    fn attach_oracle(&mut self, found: Result<f64>) -> Result<()> {
        match found {
            Ok(opt) => {
                self.oracle = Some(opt);
                self.ratio = Some(ratio(self.value, opt));
            }
            Err(Error::Resource(msg)) => self.oracle_note = Some(msg),
            Err(e) => return Err(e),
        }
        Ok(())
    }

    /// The stable text form; the wall time appears only when asked for.
    pub fn render(&self, timing: bool) -> String {
        let mut s = String::new();
        let head = match self.measure {
            Measure::Cost => "cost",
            Measure::Diameter => "diameter",
        };
        let _ = writeln!(s, "{head} {}", fmt_num(self.value));
        for e in &self.tree.edges {
            let _ = writeln!(s, "edge {} {}", e.u, e.v);
        }
        let _ = writeln!(s, "# solver {}", self.solver_tag);
        if let Some(k) = self.k {
            let _ = writeln!(s, "# k {k}");
        }
        let _ = writeln!(s, "# digest {}", self.digest);
        if let Some(note) = &self.oracle_note {
            let _ = writeln!(s, "# oracle skipped: {note}");
        }
        if let (Some(o), Some(r)) = (self.oracle, self.ratio) {
            let _ = writeln!(s, "# oracle {}", fmt_num(o));
            let _ = writeln!(s, "# ratio {}", fmt_num(r));
        }
        if timing {
            let _ = writeln!(s, "# time {}", fmt_num(self.wall.as_secs_f64()));
        }
        s
    }
}

fn ratio(value: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        value / opt
    } else if value == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let mut text = e.render().to_string();
            if !text.contains("Usage:") {
                text = format!("{text}\n{}\n", Cli::command().render_usage());
            }
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { code: 0, stdout: text, stderr: String::new() },
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Error::Infeasible(msg)) => Outcome { code: 2, stdout: format!("infeasible: {msg}\n"), stderr: String::new() },
        Err(e) => {
            let usage = Cli::command().render_usage().to_string();
            Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n\n{usage}\n") }
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Kmst { solver, input } => finish(&input, run_kmst(solver, &input)),
        Cmd::Ktree { solver: KtreeSolver::Diam, input } => finish(&input, run_diam(&input)),
        Cmd::Hu { objective, input } => finish(&input, run_hu(objective, &input)),
        Cmd::Oracle { problem, objective, input } => finish(&input, run_oracle(problem, objective, &input)),
        Cmd::Gen(args) => {
            let text = run_gen(&args)?;
            deliver(args.out.as_deref(), text)
        }
    }
}

fn finish(input: &Input, run: Result<(RunReport, Option<PointSet2D>)>) -> Result<String> {
    let (report, points) = run?;
    if let Some(path) = &input.svg {
        let ps = points.ok_or_else(|| Error::Argument("--svg needs a --points instance".into()))?;
        svg::emit_svg(&report.tree, &ps, path)?;
    }
    deliver(input.out.as_deref(), report.render(input.timing))
}

fn deliver(out: Option<&Path>, text: String) -> Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| io_error(path, e))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Argument(format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    let mut hex = String::with_capacity(64);
    for b in hash {
        let _ = write!(hex, "{b:02x}");
    }
    format!("sha256:{hex}")
}

fn need_k(input: &Input) -> Result<usize> {
    input.k.ok_or_else(|| Error::Argument("--k is required".into()))
}

fn load_points(input: &Input) -> Result<Option<PointSet2D>> {
    let Some(path) = &input.points else { return Ok(None) };
    let mut ps = read_points(&read_file(path)?)?;
    if let Some(m) = input.metric {
        ps.metric = m;
    }
    Ok(Some(ps))
}

/// A graph from `--graph`, or the complete graph of `--points`.
fn load_graph(input: &Input) -> Result<(WeightedGraph, String, Option<PointSet2D>)> {
    if let Some(path) = &input.graph {
        let g = read_graph(&read_file(path)?)?;
        let d = digest(&write_graph(&g));
        return Ok((g, d, None));
    }
    match load_points(input)? {
        Some(ps) => Ok((ps.complete_graph(), digest(&write_points(&ps)), Some(ps))),
        None => Err(Error::Argument("--graph or --points is required".into())),
    }
}

fn load_point_set(input: &Input) -> Result<(PointSet2D, String)> {
    let ps = load_points(input)?.ok_or_else(|| Error::Argument("--points is required".into()))?;
    let d = digest(&write_points(&ps));
    Ok((ps, d))
}

fn load_sp(input: &Input) -> Result<(SPParseTree, String)> {
    let path = input.parse.as_ref().ok_or_else(|| Error::Argument("--parse is required".into()))?;
    let t = read_sp(&read_file(path)?)?;
    let d = digest(&write_sp(&t));
    Ok((t, d))
}

fn load_hu(input: &Input) -> Result<(HuInstance, String)> {
    let path = input.hu.as_ref().ok_or_else(|| Error::Argument("--hu is required".into()))?;
    let inst = read_hu(&read_file(path)?)?;
    let d = digest(&write_hu(&inst));
    Ok((inst, d))
}

fn terminals(input: &Input) -> Option<&[usize]> {
    (!input.terminals.is_empty()).then_some(input.terminals.as_slice())
}

fn run_kmst(solver: KmstSolver, input: &Input) -> Result<(RunReport, Option<PointSet2D>)> {
    let k = need_k(input)?;
    let budget = OracleBudget::default();
    let start = Instant::now();
    let (tree, graph, points, d) = match solver {
        KmstSolver::Approx | KmstSolver::TwoWeight | KmstSolver::Tree => {
            let (g, d, ps) = load_graph(input)?;
            let t = match solver {
                KmstSolver::Approx => merge_collect(&g, k)?,
                KmstSolver::TwoWeight => two_weight_kmst(&g, k)?,
                _ => tree_kmst(&g, k)?,
            };
            (t, g, ps, d)
        }
        KmstSolver::Steiner => {
            let (g, d, ps) = load_graph(input)?;
            let terms = terminals(input).ok_or_else(|| Error::Argument("--terminals is required".into()))?;
            (k_steiner(&g, terms, k)?, g, ps, d)
        }
        KmstSolver::Plane | KmstSolver::Convex | KmstSolver::Circle => {
            let (ps, d) = load_point_set(input)?;
            let t = match solver {
                KmstSolver::Plane => plane_kmst(&ps, k)?,
                KmstSolver::Convex => convex_kmst(&ps, k)?,
                _ => circle_kmst(&ps, k)?,
            };
            (t, ps.complete_graph(), Some(ps), d)
        }
        KmstSolver::Sp => {
            let (t, d) = load_sp(input)?;
            (sp_kmst(&t, k)?, t.graph()?, None, d)
        }
    };
    let cost = tree.cost;
    let mut report = RunReport::new(tree, Measure::Cost, cost, Some(k), d);
    report.wall = start.elapsed();
    if input.oracle {
        let terms = matches!(solver, KmstSolver::Steiner).then(|| input.terminals.as_slice());
        report.attach_oracle(oracle_kmst(&graph, k, terms, &budget).map(|t| t.cost))?;
    }
    Ok((report, points))
}

fn run_diam(input: &Input) -> Result<(RunReport, Option<PointSet2D>)> {
    let k = need_k(input)?;
    let (g, d, ps) = load_graph(input)?;
    let start = Instant::now();
    let found = min_diameter_ktree(&g, k)?;
    let mut report = RunReport::new(found.tree, Measure::Diameter, found.value, Some(k), d);
    report.wall = start.elapsed();
    if input.oracle {
        report.attach_oracle(oracle_min_diam_ktree(&g, k, &OracleBudget::default()).map(|(v, _)| v))?;
    }
    Ok((report, ps))
}

fn hu_objective(kind: HuKind) -> HuObjective {
    match kind {
        HuKind::Comm => HuObjective::Communication,
        HuKind::Diamcost => HuObjective::DiameterCost,
    }
}

fn hu_value(t: &KTreeSolution, inst: &HuInstance, kind: HuKind) -> Result<f64> {
    let c = evaluate_hu(t, inst)?;
    Ok(match kind {
        HuKind::Comm => c.communication,
        HuKind::Diamcost => c.diameter,
    })
}

fn run_hu(kind: HuKind, input: &Input) -> Result<(RunReport, Option<PointSet2D>)> {
    let (inst, d) = load_hu(input)?;
    let start = Instant::now();
    let tree = match kind {
        HuKind::Comm => min_comm_tree_two_r_zero_c(&inst)?,
        HuKind::Diamcost => min_diamcost_tree_uniform_d_two_r(&inst)?,
    };
    let value = hu_value(&tree, &inst, kind)?;
    let mut report = RunReport::new(tree, Measure::Cost, value, None, d);
    report.wall = start.elapsed();
    if input.oracle {
        report.attach_oracle(oracle_hu_tree(&inst, hu_objective(kind), &OracleBudget::default()).map(|(v, _)| v))?;
    }
    Ok((report, None))
}

fn run_oracle(problem: OracleKind, objective: HuKind, input: &Input) -> Result<(RunReport, Option<PointSet2D>)> {
    let budget = OracleBudget::default();
    let start = Instant::now();
    let mut report = match problem {
        OracleKind::Kmst => {
            let k = need_k(input)?;
            let (g, d, ps) = load_graph(input)?;
            let t = oracle_kmst(&g, k, terminals(input), &budget)?;
            let cost = t.cost;
            return Ok((RunReport::new(t, Measure::Cost, cost, Some(k), d), ps));
        }
        OracleKind::Diam => {
            let k = need_k(input)?;
            let (g, d, _) = load_graph(input)?;
            let (v, t) = oracle_min_diam_ktree(&g, k, &budget)?;
            RunReport::new(t, Measure::Diameter, v, Some(k), d)
        }
        OracleKind::Hu => {
            let (inst, d) = load_hu(input)?;
            let (v, t) = oracle_hu_tree(&inst, hu_objective(objective), &budget)?;
            RunReport::new(t, Measure::Cost, v, None, d)
        }
    };
    report.wall = start.elapsed();
    Ok((report, None))
}

fn oracle_comment(s: &mut String, found: Result<String>) -> Result<()> {
    match found {
        Ok(v) => writeln!(s, "# oracle {v}"),
        Err(Error::Resource(msg)) => writeln!(s, "# oracle skipped: {msg}"),
        Err(e) => return Err(e),
    }
    .expect("string write");
    Ok(())
}

fn run_gen(args: &GenArgs) -> Result<String> {
    let budget = OracleBudget::default();
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Error::Argument(format!("--{flag} is required")));
    let source_graph = || -> Result<WeightedGraph> {
        let path = args.graph.as_ref().ok_or_else(|| Error::Argument("--graph is required".into()))?;
        read_graph(&read_file(path)?)
    };
    let mut s = String::new();
    let body = match args.family {
        Family::Steiner => {
            let g = source_graph()?;
            let red = gen_steiner_to_kmst(&g, &args.terminals, need(args.m, "m")?, args.weights)?;
            let _ = writeln!(s, "# k {}\n# budget {}", red.k, fmt_num(red.budget));
            if args.oracle {
                let best = min_steiner_edges(&g, &red.terminals).map_or("none".to_string(), |es| es.len().to_string());
                oracle_comment(&mut s, Ok(format!("min-steiner-edges {best}")))?;
            }
            write_graph(&red.graph)
        }
        Family::Sat3 => {
            let path = args.cnf.as_ref().ok_or_else(|| Error::Argument("--cnf is required".into()))?;
            let formula = Cnf::parse(&read_file(path)?)?;
            let red = gen_3sat_diamcost(&formula, SatParams { a: args.a, c: args.c, d_far: args.d_far })?;
            let _ = writeln!(s, "# threshold {}", fmt_num(red.threshold));
            if args.oracle {
                let sat = if formula.solve().is_some() { "satisfiable" } else { "unsatisfiable" };
                oracle_comment(&mut s, Ok(sat.to_string()))?;
            }
            write_hu(&red.instance)
        }
        Family::Is => {
            let g = source_graph()?;
            let k = need(args.k, "k")?;
            let red = gen_is_to_comm_ktree(&g, k, args.m.unwrap_or(2))?;
            let _ = writeln!(
                s,
                "# k {k}\n# threshold {}\n# approx-bound {}",
                fmt_num(red.threshold),
                fmt_num(red.approx_bound)
            );
            if args.oracle {
                oracle_comment(&mut s, oracle_comm_ktree(&red.instance, k, &budget).map(|(v, _)| fmt_num(v)))?;
            }
            write_hu(&red.instance)
        }
        Family::Fig2 => {
            let k = need(args.k, "k")?;
            let fam = gen_fig2(k, args.opt_scale)?;
            let _ = writeln!(s, "# k {k}\n# known-opt {}", fmt_num(fam.known_opt));
            if args.oracle {
                oracle_comment(&mut s, oracle_kmst(&fam.graph, k, None, &budget).map(|t| fmt_num(t.cost)))?;
            }
            write_graph(&fam.graph)
        }
        Family::Fig4 => {
            let k = need(args.k, "k")?;
            let fam = gen_fig4(k, args.sigma, args.metric.unwrap_or(Metric::Euclidean), args.seed)?;
            let _ = writeln!(s, "# k {k}\n# known-opt-bound {}", fmt_num(fam.known_opt_bound));
            if args.oracle {
                let g = fam.points.complete_graph();
                oracle_comment(&mut s, oracle_kmst(&g, k, None, &budget).map(|t| fmt_num(t.cost)))?;
            }
            write_points(&fam.points)
        }
        Family::Random => {
            let kind = args.kind.ok_or_else(|| Error::Argument("--kind is required".into()))?;
            let params = RandomParams {
                n: args.n,
                density: args.density,
                max_weight: args.max_weight,
                metric: args.metric.unwrap_or(Metric::Euclidean),
                preset: args.preset,
            };
            match gen_random(kind, &params, args.seed)? {
                RandomInstance::Graph(g) => write_graph(&g),
                RandomInstance::Points(ps) => write_points(&ps),
                RandomInstance::SpParse(t) => write_sp(&t),
                RandomInstance::Hu(h) => write_hu(&h),
            }
        }
    };
    s.push_str(&body);
    Ok(s)
}
