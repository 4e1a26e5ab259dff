use std::path::{Path, PathBuf};

use shortk::io::{read_graph, read_hu, read_points, read_sp};
use shortk_cli::{run_command, Outcome};
use tempfile::TempDir;

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("shortk").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn p5(dir: &TempDir) -> PathBuf {
    write(dir, "p5.g", "5 4\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n")
}

fn header_value(report: &str, key: &str) -> f64 {
    let line = report.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no {key} in {report}"));
    line[key.len()..].trim().parse().unwrap()
}

/// Generates a random instance through the CLI and returns its path.
fn random(dir: &TempDir, kind: &str, extra: &[&str], name: &str) -> PathBuf {
    let p = dir.path().join(name);
    let mut args = vec!["gen", "random", "--kind", kind, "--seed", "3", "--out", s(&p)];
    args.extend_from_slice(extra);
    assert_eq!(ok(&args), "");
    p
}

#[test]
fn p5_approx() {
    let dir = TempDir::new().unwrap();
    let g = p5(&dir);
    let out = ok(&["kmst", "approx", "--graph", s(&g), "--k", "3", "--oracle"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "cost 2");
    assert_eq!(lines.iter().filter(|l| l.starts_with("edge ")).count(), 2);
    assert!(lines.contains(&"# k 3"));
    assert!(lines.contains(&"# oracle 2"));
    assert_eq!(*lines.last().unwrap(), "# ratio 1");
    let digest = lines.iter().find(|l| l.starts_with("# digest sha256:")).unwrap();
    assert_eq!(digest.len(), "# digest sha256:".len() + 64);
}

#[test]
fn p5_infeasible() {
    let dir = TempDir::new().unwrap();
    let out = run(&["kmst", "approx", "--graph", s(&p5(&dir)), "--k", "9"]);
    assert_eq!(out.code, 2);
    assert_eq!(out.stdout, "infeasible: component size 5 < k\n");
}

#[test]
fn usage_and_parse_errors() {
    let dir = TempDir::new().unwrap();
    let g = p5(&dir);
    for args in [
        vec!["kmst", "approx", "--graph", s(&g)],
        vec!["kmst", "nosuch", "--graph", s(&g), "--k", "2"],
        vec!["kmst", "approx", "--graph", s(&g), "--k", "two"],
        vec!["kmst", "approx", "--k", "2"],
        vec!["kmst", "approx", "--graph", "/nonexistent/file", "--k", "2"],
    ] {
        let out = run(&args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("Usage"), "{}", out.stderr);
    }
    let bad = write(&dir, "bad.g", "3 2\n0 1 1\n");
    let out = run(&["kmst", "approx", "--graph", s(&bad), "--k", "2"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("parse error"));
}

#[test]
fn fig4_generation_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.xy");
    let b = dir.path().join("b.xy");
    for p in [&a, &b] {
        ok(&["gen", "fig4", "--k", "16", "--sigma", "1", "--seed", "7", "--out", s(p)]);
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let ps = read_points(std::str::from_utf8(&bytes).unwrap()).unwrap();
    assert_eq!(ps.len(), 32);
    let other = dir.path().join("c.xy");
    ok(&["gen", "fig4", "--k", "16", "--sigma", "1", "--seed", "8", "--out", s(&other)]);
    assert_ne!(bytes, std::fs::read(&other).unwrap());
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = random(&dir, "graph", &["--n", "9"], "g");
    let args = ["kmst", "approx", "--graph", s(&g), "--k", "4", "--oracle"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn exact_solvers_match_their_oracles() {
    let dir = TempDir::new().unwrap();
    let tree = random(&dir, "tree", &["--n", "9"], "tree.g");
    let two = random(&dir, "two-weight", &["--n", "8"], "two.g");
    let sp = random(&dir, "sp-parse", &["--n", "7"], "sp.txt");
    let convex = random(&dir, "convex", &["--n", "8"], "convex.xy");
    let circle = random(&dir, "circle", &["--n", "8"], "circle.xy");
    let g = random(&dir, "graph", &["--n", "8"], "g");
    let cases: Vec<Vec<&str>> = vec![
        vec!["kmst", "tree", "--graph", s(&tree)],
        vec!["kmst", "two-weight", "--graph", s(&two)],
        vec!["kmst", "sp", "--parse", s(&sp)],
        vec!["kmst", "convex", "--points", s(&convex)],
        vec!["kmst", "circle", "--points", s(&circle)],
        vec!["ktree", "diam", "--graph", s(&g)],
    ];
    for case in cases {
        for k in ["1", "3", "5"] {
            let mut args = case.clone();
            args.extend(["--k", k, "--oracle"]);
            let out = ok(&args);
            assert!(out.contains("\n# ratio 1\n"), "{args:?}\n{out}");
        }
    }
    let out = ok(&["ktree", "diam", "--graph", s(&g), "--k", "3"]);
    assert!(out.starts_with("diameter "));
}

#[test]
fn hu_solvers_match_their_oracles() {
    let dir = TempDir::new().unwrap();
    let row3 = random(&dir, "hu", &["--n", "6", "--preset", "3"], "row3.hu");
    let row3u = random(&dir, "hu", &["--n", "6", "--preset", "3u"], "row3u.hu");
    let comm = ok(&["hu", "comm", "--hu", s(&row3), "--oracle"]);
    assert!(comm.contains("\n# ratio 1\n"), "{comm}");
    let diam = ok(&["hu", "diamcost", "--hu", s(&row3u), "--oracle"]);
    assert!(diam.contains("\n# ratio 1\n"), "{diam}");
    let oracle = ok(&["oracle", "hu", "--hu", s(&row3u), "--objective", "diamcost"]);
    assert_eq!(header_value(&oracle, "cost "), header_value(&diam, "cost "));
    assert_eq!(oracle.lines().filter(|l| l.starts_with("edge ")).count(), 5);
}

#[test]
fn heuristics_stay_within_their_bounds() {
    let dir = TempDir::new().unwrap();
    let pts = random(&dir, "points", &["--n", "10"], "p.xy");
    let g = random(&dir, "graph", &["--n", "10"], "g");
    for k in 2..=6usize {
        let ks = k.to_string();
        for metric in ["euclidean", "rectilinear"] {
            let out = ok(&["kmst", "plane", "--points", s(&pts), "--metric", metric, "--k", &ks, "--oracle"]);
            assert!(header_value(&out, "# ratio ") <= 8.0 * (k as f64).powf(0.25));
        }
        let out = ok(&["kmst", "approx", "--graph", s(&g), "--k", &ks, "--oracle"]);
        assert!(header_value(&out, "# ratio ") <= 2.0 * (k as f64).sqrt());
        let out = ok(&["kmst", "steiner", "--graph", s(&g), "--terminals", "0,2,4,6,8", "--k", "3", "--oracle"]);
        assert!(header_value(&out, "# ratio ") <= 4.0 * 3f64.sqrt() + 1e-9);
    }
}

#[test]
fn oracle_subcommands() {
    let dir = TempDir::new().unwrap();
    let g = p5(&dir);
    let out = ok(&["oracle", "kmst", "--graph", s(&g), "--k", "4"]);
    assert!(out.starts_with("cost 3\n"));
    let out = ok(&["oracle", "diam", "--graph", s(&g), "--k", "4"]);
    assert!(out.starts_with("diameter 3\n"));
    let out = ok(&["oracle", "kmst", "--graph", s(&g), "--k", "2", "--terminals", "0,4"]);
    assert!(out.starts_with("cost 4\n"));
    let big = random(&dir, "graph", &["--n", "40"], "big.g");
    let out = ok(&["kmst", "approx", "--graph", s(&big), "--k", "5", "--oracle"]);
    assert!(out.contains("# oracle skipped: "));
    assert!(!out.contains("# ratio"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let g = p5(&dir);
    let report = dir.path().join("r.txt");
    assert_eq!(ok(&["kmst", "approx", "--graph", s(&g), "--k", "3", "--out", s(&report)]), "");
    assert!(std::fs::read_to_string(&report).unwrap().starts_with("cost 2\n"));
    let timed = ok(&["kmst", "approx", "--graph", s(&g), "--k", "3", "--timing"]);
    assert!(timed.lines().last().unwrap().starts_with("# time "));
}

#[test]
fn generators_write_readable_instances() {
    let dir = TempDir::new().unwrap();
    let g = p5(&dir);
    let steiner = ok(&["gen", "steiner", "--graph", s(&g), "--terminals", "0,4", "--m", "4", "--oracle"]);
    assert!(steiner.contains("# oracle min-steiner-edges 4\n"));
    let target = read_graph(&steiner).unwrap();
    let k = header_value(&steiner, "# k ") as usize;
    assert!(k <= target.vertex_count());
    let steiner123 = ok(&["gen", "steiner", "--graph", s(&g), "--terminals", "0,4", "--m", "4", "--weights", "123"]);
    assert_eq!(read_graph(&steiner123).unwrap().distinct_weights(), vec![1.0, 2.0, 3.0]);

    let cnf = write(&dir, "f.cnf", "c tiny\n1 2 3 0\n-1 -2 3 0\n");
    let sat = ok(&["gen", "sat3", "--cnf", s(&cnf), "--oracle"]);
    assert!(sat.contains("# oracle satisfiable\n"));
    assert_eq!(read_hu(&sat).unwrap().n(), 1 + 2 * 3 + 2);

    let is = ok(&["gen", "is", "--graph", s(&g), "--k", "3", "--m", "2", "--oracle"]);
    assert_eq!(header_value(&is, "# threshold "), 6.0);
    assert!(header_value(&is, "# oracle ") <= 6.0);
    assert_eq!(read_hu(&is).unwrap().n(), 5);

    let fig2 = ok(&["gen", "fig2", "--k", "4", "--oracle"]);
    assert!(header_value(&fig2, "# oracle ") <= header_value(&fig2, "# known-opt ") + 1e-12);
    read_graph(&fig2).unwrap();

    let sp = ok(&["gen", "random", "--kind", "sp-parse", "--n", "6", "--seed", "1"]);
    read_sp(&sp).unwrap();
    let out = run(&["gen", "random", "--n", "6"]);
    assert_eq!(out.code, 1);
    assert_eq!(run(&["gen", "fig2", "--k", "5"]).code, 1);
}

fn svg_doc(text: &str) -> roxmltree::Document<'_> {
    roxmltree::Document::parse(text).expect("well-formed svg")
}

fn view_box(doc: &roxmltree::Document) -> [f64; 4] {
    let vb: Vec<f64> = doc.root_element().attribute("viewBox").unwrap().split(' ').map(|t| t.parse().unwrap()).collect();
    [vb[0], vb[1], vb[2], vb[3]]
}

#[test]
fn svg_of_a_fig4_solution() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("f.xy");
    ok(&["gen", "fig4", "--k", "16", "--sigma", "1", "--seed", "7", "--out", s(&pts)]);
    let pic = dir.path().join("f.svg");
    let report = ok(&["kmst", "plane", "--points", s(&pts), "--k", "16", "--svg", s(&pic)]);
    let text = std::fs::read_to_string(&pic).unwrap();
    let doc = svg_doc(&text);
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let [x, y, w, h] = view_box(&doc);
    let inside = |px: f64, py: f64| px >= x && px <= x + w && py >= y && py <= y + h;
    let circles: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("circle")).collect();
    assert_eq!(circles.len(), 32);
    for c in &circles {
        let cx: f64 = c.attribute("cx").unwrap().parse().unwrap();
        let cy: f64 = c.attribute("cy").unwrap().parse().unwrap();
        assert!(inside(cx, cy));
    }
    let lines = doc.descendants().filter(|n| n.has_tag_name("line")).count();
    assert_eq!(lines, report.lines().filter(|l| l.starts_with("edge ")).count());
    ok(&["kmst", "plane", "--points", s(&pts), "--k", "16", "--svg", s(&pic)]);
    assert_eq!(std::fs::read_to_string(&pic).unwrap(), text);
}

#[test]
fn svg_of_a_rectilinear_tree() {
    let dir = TempDir::new().unwrap();
    let pts = write(&dir, "r.xy", "3 rectilinear\n0 0\n2 1\n3 5\n");
    let pic = dir.path().join("r.svg");
    ok(&["kmst", "plane", "--points", s(&pts), "--k", "3", "--svg", s(&pic)]);
    let text = std::fs::read_to_string(&pic).unwrap();
    let doc = svg_doc(&text);
    let lines: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("line")).collect();
    assert_eq!(lines.len(), 4);
    for l in lines {
        let a = |k| l.attribute(k).unwrap();
        assert!(a("x1") == a("x2") || a("y1") == a("y2"));
    }
}

#[test]
fn svg_needs_points() {
    let dir = TempDir::new().unwrap();
    let pic = dir.path().join("x.svg");
    let out = run(&["kmst", "approx", "--graph", s(&p5(&dir)), "--k", "2", "--svg", s(&pic)]);
    assert_eq!(out.code, 1);
    assert!(!pic.exists());
}
