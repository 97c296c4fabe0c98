//! Deterministic SVG drawings: semicircles over a number line, chords of a polygon.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::arc::Arc;
use crate::orbit::MDiagonal;

const PITCH: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn header(width: f64, height: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    )
}

fn stroke(dashed: bool) -> &'static str {
    if dashed {
        "stroke=\"#c03030\" stroke-dasharray=\"4 3\""
    } else {
        "stroke=\"#202020\""
    }
}

/// Arcs as upper semicircles; `dashed` arcs (e.g. Ptolemy arcs) are drawn after the solid ones.
pub fn render_arcs(solid: &BTreeSet<Arc>, dashed: &BTreeSet<Arc>) -> String {
    let pts: Vec<i64> = solid.iter().chain(dashed).flat_map(|a| a.endpoints()).collect();
    let (Some(&lo), Some(&hi)) = (pts.iter().min(), pts.iter().max()) else {
        return format!("{}</svg>\n", header(2.0 * MARGIN, 2.0 * MARGIN));
    };
    let span = (hi - lo) as f64;
    let width = span * PITCH + 2.0 * MARGIN;
    let base = span * PITCH / 2.0 + 2.0 * MARGIN;
    let height = base + MARGIN;
    let x = |v: i64| MARGIN + (v - lo) as f64 * PITCH;
    let mut out = header(width, height);
    let _ = writeln!(
        out,
        "  <line x1=\"{:.2}\" y1=\"{base:.2}\" x2=\"{:.2}\" y2=\"{base:.2}\" stroke=\"#808080\"/>",
        x(lo),
        x(hi)
    );
    for v in lo..=hi {
        let _ = writeln!(out, "  <circle cx=\"{:.2}\" cy=\"{base:.2}\" r=\"2\" fill=\"#000000\"/>", x(v));
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\" text-anchor=\"middle\">{v}</text>",
            x(v),
            base + 14.0
        );
    }
    for (set, dashed) in [(solid, false), (dashed, true)] {
        for a in set {
            if a.is_loop() {
                let _ = writeln!(
                    out,
                    "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"8\" fill=\"none\" {}/>",
                    x(a.lo()),
                    base - 8.0,
                    stroke(dashed)
                );
            } else {
                let r = (a.hi() - a.lo()) as f64 * PITCH / 2.0;
                let _ = writeln!(
                    out,
                    "  <path d=\"M {:.2} {base:.2} A {r:.2} {r:.2} 0 0 1 {:.2} {base:.2}\" fill=\"none\" {}/>",
                    x(a.lo()),
                    x(a.hi()),
                    stroke(dashed)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The `big_n`-gon with vertex 1 at the top, numbered clockwise, and the given chords.
pub fn render_polygon(big_n: i64, solid: &BTreeSet<MDiagonal>, dashed: &BTreeSet<MDiagonal>) -> String {
    if big_n < 1 {
        return format!("{}</svg>\n", header(2.0 * MARGIN, 2.0 * MARGIN));
    }
    let radius = 40.0 + 10.0 * big_n as f64;
    let side = 2.0 * (radius + MARGIN);
    let c = radius + MARGIN;
    let pos = |v: i64| {
        let t = 2.0 * std::f64::consts::PI * (v - 1) as f64 / big_n as f64;
        (c + radius * t.sin(), c - radius * t.cos())
    };
    let mut out = header(side, side);
    let ring: Vec<String> = (1..=big_n).map(|v| {
        let (px, py) = pos(v);
        format!("{px:.2},{py:.2}")
    }).collect();
    let _ = writeln!(out, "  <polygon points=\"{}\" fill=\"none\" stroke=\"#808080\"/>", ring.join(" "));
    for v in 1..=big_n {
        let (px, py) = pos(v);
        let (lx, ly) = (c + (px - c) * 1.12, c + (py - c) * 1.12 + 4.0);
        let _ = writeln!(out, "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"2\" fill=\"#000000\"/>");
        let _ = writeln!(out, "  <text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"10\" text-anchor=\"middle\">{v}</text>");
    }
    for (set, dashed) in [(solid, false), (dashed, true)] {
        for d in set {
            let ((x1, y1), (x2, y2)) = (pos(d.i()), pos(d.j()));
            let _ = writeln!(
                out,
                "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" {}/>",
                stroke(dashed)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::Weight;
    use crate::extension::ptolemy_arcs;
    use crate::orbit::m_diagonals;

    #[test]
    fn crossing_arcs_with_ptolemy() {
        let w = Weight(2);
        let (a, b) = (Arc::new(w, 0, 3).unwrap(), Arc::new(w, 1, 4).unwrap());
        let solid = BTreeSet::from([a, b]);
        let dashed = ptolemy_arcs(&a, &b).unwrap().all();
        let svg = render_arcs(&solid, &dashed);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<path").count(), 4);
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert_eq!(svg, render_arcs(&solid, &dashed));
    }

    #[test]
    fn hexagon_diagonals() {
        let all: BTreeSet<_> = m_diagonals(3, 2).into_iter().collect();
        assert_eq!(all.len(), 9);
        let svg = render_polygon(6, &all, &BTreeSet::new());
        assert_eq!(svg.matches("<line").count(), 9);
        assert_eq!(svg.matches("<text").count(), 6);
    }

    #[test]
    fn empty_canvas() {
        let svg = render_arcs(&BTreeSet::new(), &BTreeSet::new());
        assert_eq!(svg, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"60\" height=\"60\" viewBox=\"0 0 60 60\">\n</svg>\n");
    }

    #[test]
    fn loops_render_as_circles() {
        let a = Arc::new(Weight(0), 2, 2).unwrap();
        let svg = render_arcs(&BTreeSet::from([a]), &BTreeSet::new());
        assert!(svg.contains("r=\"8\""));
    }
}
