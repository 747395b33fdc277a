//! Static alcove pictures for ranks 2 and 3.

use std::collections::BTreeSet;
use std::fmt::Write;

use springer_core::affine_weyl::{elements_up_to_length, enumerate_f, AffineWeylElement};
use springer_core::certificate::upper_bound;

use crate::error::CliError;
use crate::report::word;

const SCALE: f64 = 60.0;
const MARGIN: f64 = 30.0;

struct Cell {
    points: Vec<(f64, f64)>,
    element: AffineWeylElement,
    class: &'static str,
}

/// Plane coordinates of a vertex image, after removing its mean.
fn project(v: &[i64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<i64>() as f64 / n;
    let u: Vec<f64> = v.iter().map(|&c| c as f64 - mean).collect();
    if v.len() == 2 {
        return ((u[0] - u[1]) * SCALE, 0.0);
    }
    let x = (u[0] - u[1]) / 2f64.sqrt();
    let y = (u[0] + u[1] - 2.0 * u[2]) / 6f64.sqrt();
    (x * SCALE, -y * SCALE)
}

/// Two decimals, without a sign on zero.
fn num(v: f64) -> String {
    format!("{:.2}", (v * 100.0).round() / 100.0 + 0.0)
}

fn classify(w: &AffineWeylElement, f: &[AffineWeylElement], fixed: &BTreeSet<AffineWeylElement>) -> &'static str {
    if fixed.contains(w) {
        "fixed"
    } else if w.is_identity() {
        "fundamental"
    } else if f.contains(w) {
        "box"
    } else {
        "alcove"
    }
}

fn fill(class: &str) -> &'static str {
    match class {
        "fixed" => "#e4572e",
        "fundamental" => "#17bebb",
        "box" => "#9bd3d0",
        _ => "#ffffff",
    }
}

pub fn render(n: usize, x: Option<&AffineWeylElement>) -> Result<String, CliError> {
    if !(2..=3).contains(&n) {
        return Err(CliError::Usage(format!("alcove pictures exist for n = 2 and 3 only, got {n}")));
    }
    let f = enumerate_f(n)?;
    let fixed = match x {
        Some(x) if !f.contains(x) => return Err(CliError::Usage(format!("{x} is not in the fundamental box"))),
        Some(x) => upper_bound(x),
        None => BTreeSet::new(),
    };
    let reach = fixed.iter().map(|w| w.length()).max().unwrap_or(0).max(if n == 2 { 4 } else { 6 });
    let cells: Vec<Cell> = elements_up_to_length(n, reach)
        .into_iter()
        .map(|w| Cell {
            points: w.vertices().iter().map(|v| project(v)).collect(),
            class: classify(&w, &f, &fixed),
            element: w,
        })
        .collect();

    let xs = cells.iter().flat_map(|c| c.points.iter().map(|p| p.0));
    let ys = cells.iter().flat_map(|c| c.points.iter().map(|p| p.1));
    let (x0, x1) = xs.fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(v), b.max(v)));
    let (mut y0, mut y1) = ys.fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(v), b.max(v)));
    if n == 2 {
        y0 = -SCALE / 2.0;
        y1 = SCALE / 2.0;
    }
    let (w, h) = (x1 - x0 + 2.0 * MARGIN, y1 - y0 + 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="{} {} {} {}">"#,
        num(x0 - MARGIN),
        num(y0 - MARGIN),
        num(w),
        num(h)
    );
    let title = match x {
        Some(x) => format!("Alcoves for n={n}; fixed points of the component of {}", word(x)),
        None => format!("Alcoves for n={n}; fundamental box shaded"),
    };
    let _ = writeln!(s, "  <title>{title}</title>");
    let _ = writeln!(s, r##"  <g stroke="#333333" stroke-width="1" font-family="sans-serif" font-size="9">"##);
    for c in &cells {
        let label = word(&c.element);
        if n == 2 {
            let (a, b) = (c.points[0].0.min(c.points[1].0), c.points[0].0.max(c.points[1].0));
            let _ = writeln!(
                s,
                r#"    <rect class="{}" x="{}" y="{}" width="{}" height="{}" fill="{}"><title>{label}</title></rect>"#,
                c.class,
                num(a),
                num(-SCALE / 6.0),
                num(b - a),
                num(SCALE / 3.0),
                fill(c.class)
            );
        } else {
            let pts: Vec<String> = c.points.iter().map(|(px, py)| format!("{},{}", num(*px), num(*py))).collect();
            let _ = writeln!(
                s,
                r#"    <polygon class="{}" points="{}" fill="{}"><title>{label}</title></polygon>"#,
                c.class,
                pts.join(" "),
                fill(c.class)
            );
        }
    }
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(s, r##"  <circle cx="0" cy="0" r="2.5" fill="#000000"/>"##);
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_fundamental_alcove_is_unit_interval() {
        let e = AffineWeylElement::identity(2);
        let pts: Vec<_> = e.vertices().iter().map(|v| project(v)).collect();
        assert_eq!(pts[0].0, 0.0);
        assert_eq!(pts[1].0, SCALE);
    }

    #[test]
    fn larger_ranks_are_refused() {
        assert!(render(4, None).is_err());
    }
}
