//! A static SVG picture of a surface field: faces, n direction glyphs per
//! face, and vertices colored by local index. Byte-deterministic for fixed
//! inputs.

use std::fmt::Write as _;

use num::ToPrimitive;
use thiserror::Error;

use crate::field::NField;
use crate::index::VerificationVerdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SvgError {
    #[error("mesh carries no vertex coordinates")]
    MissingCoordinates,
    #[error("report vertex ids do not match the mesh")]
    VertexMismatch,
}

/// Deterministic oblique projection of the stored 3D coordinates.
fn project(c: [f64; 3]) -> (f64, f64) {
    (c[0] + 0.35 * c[2], -c[1] - 0.2 * c[2])
}

fn vertex_color(index: i64, regular: bool) -> &'static str {
    if regular {
        "#b0b0b0"
    } else if index > 0 {
        "#c62828"
    } else if index < 0 {
        "#1565c0"
    } else {
        "#ef6c00"
    }
}

/// Render the field and its verification report as a standalone SVG document.
pub fn emit_svg(field: &NField, verdict: &VerificationVerdict) -> Result<String, SvgError> {
    let base = field.bundle().base();
    let coords = base.coords().ok_or(SvgError::MissingCoordinates)?;
    if verdict.vertices.len() != base.vertex_count()
        || verdict.vertices.iter().any(|r| r.vertex >= base.vertex_count())
    {
        return Err(SvgError::VertexMismatch);
    }

    let pts: Vec<(f64, f64)> = coords.iter().map(|&c| project(c)).collect();
    let (mut min_x, mut min_y, mut max_x, mut max_y) =
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.12 * span;
    let scale = 640.0 / (span + 2.0 * margin);
    let tx = |x: f64| (x - min_x + margin) * scale;
    let ty = |y: f64| (y - min_y + margin) * scale;

    let mut out = String::new();
    let width = (max_x - min_x + 2.0 * margin) * scale;
    let height = (max_y - min_y + 2.0 * margin) * scale;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.3}\" height=\"{:.3}\" viewBox=\"0 0 {:.3} {:.3}\">",
        width, height, width, height
    )
    .unwrap();

    for f in base.faces() {
        let p: Vec<String> = f
            .iter()
            .map(|&v| format!("{:.3},{:.3}", tx(pts[v].0), ty(pts[v].1)))
            .collect();
        writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"#f4f4f0\" stroke=\"#444444\" stroke-width=\"1\"/>",
            p.join(" ")
        )
        .unwrap();
    }

    // n direction glyphs at each face centroid.
    let glyph = 0.16 * span * scale;
    for (face, f) in base.faces().iter().enumerate() {
        let cx = tx(f.iter().map(|&v| pts[v].0).sum::<f64>() / 3.0);
        let cy = ty(f.iter().map(|&v| pts[v].1).sum::<f64>() / 3.0);
        for value in field.values(face) {
            let turns = value
                .angle
                .representative()
                .rational()
                .to_f64()
                .unwrap_or(0.0);
            let a = turns * std::f64::consts::TAU;
            let (dx, dy) = (a.cos() * glyph, -a.sin() * glyph);
            writeln!(
                out,
                "  <line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"#2e7d32\" stroke-width=\"1.5\"/>",
                cx, cy, cx + dx, cy + dy
            )
            .unwrap();
            writeln!(
                out,
                "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"2\" fill=\"#2e7d32\"/>",
                cx + dx,
                cy + dy
            )
            .unwrap();
        }
    }

    for r in &verdict.vertices {
        let (x, y) = pts[r.vertex];
        let index = r.index.to_i64().unwrap_or(0);
        let color = vertex_color(index, r.regular);
        let radius = if r.regular { 4.0 } else { 7.0 };
        writeln!(
            out,
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.1}\" fill=\"{}\" stroke=\"#222222\" stroke-width=\"1\"/>",
            tx(x),
            ty(y),
            radius,
            color
        )
        .unwrap();
        if !r.regular {
            writeln!(
                out,
                "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\" fill=\"#111111\">{}</text>",
                tx(x) + 9.0,
                ty(y) + 4.0,
                index
            )
            .unwrap();
        }
    }

    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
