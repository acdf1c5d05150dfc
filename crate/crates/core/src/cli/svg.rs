//! Standalone SVG: lattice dots, the nested adjoint chain, and the level
//! lines `h = c` of every optimal direction.

use std::fmt::Write;
use std::fs;
use std::io;
use std::path::Path;

use crate::error::{Error, Result};
use crate::polygon::{interior_points, LatticePoint, LatticePolygon};
use crate::width::{Viewangle, WidthReport};

/// Screen units per lattice step.
pub const PITCH: i64 = 24;

struct Frame {
    min: LatticePoint,
    max: LatticePoint,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        (x - self.min.x as f64 + 1.0) * PITCH as f64
    }

    fn y(&self, y: f64) -> f64 {
        (self.max.y as f64 - y + 1.0) * PITCH as f64
    }

    fn size(&self) -> (i64, i64) {
        (
            (self.max.x - self.min.x + 2) * PITCH,
            (self.max.y - self.min.y + 2) * PITCH,
        )
    }
}

/// Endpoints of `m x + n y = c` clipped to the box `[lo, hi]²` (per axis).
fn clip_level(
    h: Viewangle,
    c: f64,
    lo: (f64, f64),
    hi: (f64, f64),
) -> Option<((f64, f64), (f64, f64))> {
    let (m, n) = (h.m() as f64, h.n() as f64);
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if n != 0.0 {
        for x in [lo.0, hi.0] {
            let y = (c - m * x) / n;
            if (lo.1..=hi.1).contains(&y) {
                pts.push((x, y));
            }
        }
    }
    if m != 0.0 {
        for y in [lo.1, hi.1] {
            let x = (c - n * y) / m;
            if (lo.0..=hi.0).contains(&x) {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pts.dedup();
    (pts.len() >= 2).then(|| (pts[0], pts[pts.len() - 1]))
}

pub fn render_svg(poly: &LatticePolygon, report: &WidthReport) -> Result<String> {
    if poly.dim() < 2 {
        return Err(Error::DegeneratePolygon { dim: poly.dim() });
    }
    let (min, max) = poly.bounding_box();
    let frame = Frame { min, max };
    let (w, h) = frame.size();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
    );
    out.push_str(concat!(
        "<style>",
        ".lattice{fill:#999}.interior{fill:#d33}",
        ".chain{fill:none;stroke:#222;stroke-width:1.5}",
        ".level{stroke-width:0.75;stroke-dasharray:3 2}",
        "</style>\n"
    ));

    let inside = interior_points(poly);
    for y in min.y..=max.y {
        for x in min.x..=max.x {
            let p = LatticePoint::new(x, y);
            let class = if inside.binary_search(&p).is_ok() {
                "interior"
            } else {
                "lattice"
            };
            let _ = writeln!(
                out,
                r#"<circle class="{class}" cx="{}" cy="{}" r="2.5"/>"#,
                frame.x(x as f64),
                frame.y(y as f64)
            );
        }
    }

    for (i, level) in report.trace.iter().enumerate() {
        let pts = level
            .polygon
            .vertices()
            .iter()
            .map(|v| format!("{},{}", frame.x(v.x as f64), frame.y(v.y as f64)))
            .collect::<Vec<_>>()
            .join(" ");
        let tag = match level.polygon.dim() {
            2 => "polygon",
            _ => "polyline",
        };
        let _ = writeln!(
            out,
            r#"<{tag} class="chain" data-level="{i}" data-case="{}" points="{pts}"/>"#,
            level.case
        );
    }

    const COLORS: [&str; 4] = ["#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e"];
    let lo = (min.x as f64 - 0.5, min.y as f64 - 0.5);
    let hi = (max.x as f64 + 0.5, max.y as f64 + 0.5);
    for (k, &dir) in report.optimal.iter().enumerate() {
        let vals: Vec<i128> = poly.vertices().iter().map(|&v| dir.eval(v)).collect();
        let (cmin, cmax) = (
            *vals.iter().min().expect("vertices"),
            *vals.iter().max().expect("vertices"),
        );
        let color = COLORS[k % COLORS.len()];
        let _ = writeln!(
            out,
            r#"<g class="bundle" data-direction="{dir}" stroke="{color}">"#
        );
        for c in cmin..=cmax {
            if let Some((a, b)) = clip_level(dir, c as f64, lo, hi) {
                let _ = writeln!(
                    out,
                    r#"<line class="level" data-value="{c}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                    frame.x(a.0),
                    frame.y(a.1),
                    frame.x(b.0),
                    frame.y(b.1)
                );
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Writes [`render_svg`] to `path`. Domain errors surface as `InvalidInput`.
pub fn emit_svg(poly: &LatticePolygon, report: &WidthReport, path: &Path) -> io::Result<()> {
    let svg =
        render_svg(poly, report).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    fs::write(path, svg)
}
