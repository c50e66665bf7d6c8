//! Minimal self-contained SVG emission for embedding traces and series
//! plots. Byte output is deterministic for identical inputs.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Scatter,
    Line,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<[f64; 2]>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn fmt_coord(x: f64) -> String {
    format!("{x:.3}")
}

/// Render series as a standalone SVG. Lines draw polylines with a marker on
/// the final point; scatter draws one marker per point.
pub fn render_svg(series: &[Series], kind: PlotKind) -> Result<String> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err(Error::EmptyInput("plot needs at least one point"));
    }
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in series {
        for p in &s.points {
            min_x = min_x.min(p[0]);
            max_x = max_x.max(p[0]);
            min_y = min_y.min(p[1]);
            max_y = max_y.max(p[1]);
        }
    }
    let span_x = (max_x - min_x).max(1e-12);
    let span_y = (max_y - min_y).max(1e-12);
    let sx = |x: f64| MARGIN + (x - min_x) / span_x * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - min_y) / span_y * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        match kind {
            PlotKind::Line => {
                let coords: Vec<String> = s
                    .points
                    .iter()
                    .map(|p| format!("{},{}", fmt_coord(sx(p[0])), fmt_coord(sy(p[1]))))
                    .collect();
                let _ = writeln!(
                    out,
                    "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"><title>{}</title></polyline>",
                    coords.join(" "),
                    s.label
                );
                if let Some(last) = s.points.last() {
                    let _ = writeln!(
                        out,
                        "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{color}\"/>",
                        fmt_coord(sx(last[0])),
                        fmt_coord(sy(last[1]))
                    );
                }
            }
            PlotKind::Scatter => {
                for p in &s.points {
                    let _ = writeln!(
                        out,
                        "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"><title>{}</title></circle>",
                        fmt_coord(sx(p[0])),
                        fmt_coord(sy(p[1])),
                        s.label
                    );
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn write_svg(path: &std::path::Path, series: &[Series], kind: PlotKind) -> Result<()> {
    let svg = render_svg(series, kind)?;
    crate::io::write_string(path, &svg)
}
