//! Standalone SVG rendering of trees over planar point sets.

use std::fmt::Write as _;
use std::path::Path;

use shortk::io::fmt_num;
use shortk::{Error, KTreeSolution, Metric, PointSet2D, Result};

const WIDTH: f64 = 800.0;

/// SVG text for `t` drawn over `ps`. The y axis points up. Rectilinear trees
/// draw each edge as a horizontal then a vertical segment.
pub fn render_svg(t: &KTreeSolution, ps: &PointSet2D) -> Result<String> {
    if ps.is_empty() {
        return Err(Error::Argument("empty point set".into()));
    }
    if let Some(&v) = t.vertices.iter().find(|&&v| v >= ps.len()) {
        return Err(Error::Argument(format!("vertex {v} has no point among the {}", ps.len())));
    }
    let xs = ps.points.iter().map(|p| p.x);
    let ys = ps.points.iter().map(|p| p.y);
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let (y0, y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    let span = (x1 - x0).max(y1 - y0);
    let span = if span > 0.0 { span } else { 1.0 };
    let mx = if x1 > x0 { 0.05 * (x1 - x0) } else { 0.05 * span };
    let my = if y1 > y0 { 0.05 * (y1 - y0) } else { 0.05 * span };
    let (vx, vy) = (x0 - mx, -(y1 + my));
    let (vw, vh) = (x1 - x0 + 2.0 * mx, y1 - y0 + 2.0 * my);
    let r = 0.006 * span;
    let stroke = 0.003 * span;
    let height = WIDTH * vh / vw;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        fmt_num(WIDTH),
        fmt_num(height),
        fmt_num(vx),
        fmt_num(vy),
        fmt_num(vw),
        fmt_num(vh)
    );
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="{}" stroke-linecap="round">"#, fmt_num(stroke));
    let line = |s: &mut String, ax: f64, ay: f64, bx: f64, by: f64| {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            fmt_num(ax),
            fmt_num(-ay),
            fmt_num(bx),
            fmt_num(-by)
        );
    };
    for e in &t.edges {
        let (a, b) = (ps.points[e.u], ps.points[e.v]);
        match ps.metric {
            Metric::Euclidean => line(&mut s, a.x, a.y, b.x, b.y),
            Metric::Rectilinear => {
                line(&mut s, a.x, a.y, b.x, a.y);
                line(&mut s, b.x, a.y, b.x, b.y);
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g stroke="none">"#);
    let mut in_tree = vec![false; ps.len()];
    for &v in &t.vertices {
        in_tree[v] = true;
    }
    for (p, &used) in ps.points.iter().zip(&in_tree) {
        let fill = if used { "crimson" } else { "gray" };
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            fmt_num(p.x),
            fmt_num(-p.y),
            fmt_num(r)
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn emit_svg(t: &KTreeSolution, ps: &PointSet2D, path: &Path) -> Result<()> {
    let text = render_svg(t, ps)?;
    std::fs::write(path, text).map_err(|e| Error::Argument(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use shortk::Point;

    fn two(metric: Metric) -> (KTreeSolution, PointSet2D) {
        let ps = PointSet2D::new(vec![Point::new(0.0, 0.0), Point::new(3.0, 4.0)], metric).unwrap();
        let t = ps.mst_of(&[0, 1], "t");
        (t, ps)
    }

    #[test]
    fn two_points_one_line() {
        let (t, ps) = two(Metric::Euclidean);
        let s = render_svg(&t, &ps).unwrap();
        assert_eq!(s.matches("<circle").count(), 2);
        assert_eq!(s.matches("<line").count(), 1);
        assert!(s.contains(r#"viewBox="-0.15 -4.2 3.3 4.4""#));
    }

    #[test]
    fn rectilinear_edges_are_l_paths() {
        let (t, ps) = two(Metric::Rectilinear);
        let s = render_svg(&t, &ps).unwrap();
        assert_eq!(s.matches("<line").count(), 2);
        assert!(s.contains(r#"<line x1="0" y1="0" x2="3" y2="0"/>"#));
        assert!(s.contains(r#"<line x1="3" y1="0" x2="3" y2="-4"/>"#));
    }

    #[test]
    fn foreign_vertices_rejected() {
        let (_, ps) = two(Metric::Euclidean);
        let t = KTreeSolution::single(5, "t");
        assert!(matches!(render_svg(&t, &ps), Err(Error::Argument(_))));
    }

    #[test]
    fn single_point_has_a_viewport() {
        let ps = PointSet2D::new(vec![Point::new(2.0, 2.0)], Metric::Euclidean).unwrap();
        let s = render_svg(&KTreeSolution::single(0, "t"), &ps).unwrap();
        assert!(s.contains(r#"viewBox="1.95 -2.05 0.1 0.1""#));
    }
}
