use std::path::PathBuf;

use clap::ValueEnum;
use topsig::error::{Error, Result};
use topsig::plot::{render_svg, PlotKind, Series};

use super::require_out;
use crate::context::{load_json, Context};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Scatter,
    Line,
}

#[derive(clap::Args)]
pub struct Args {
    /// Data file: {"series": [{"label": "...", "points": [[x, y], ...]}]}.
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    kind: Kind,
}

pub fn run(ctx: &mut Context, args: Args) -> Result<()> {
    let out = require_out(ctx, "plot")?;
    let bytes = ctx.input_bytes(&args.data)?;
    let value = load_json(&args.data, &bytes)?;
    let bad = |reason: String| Error::Malformed {
        path: args.data.display().to_string(),
        reason,
    };
    let mut series = Vec::new();
    for (i, entry) in value
        .get("series")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("missing 'series' array".into()))?
        .iter()
        .enumerate()
    {
        let label = entry
            .get("label")
            .and_then(|v| v.as_str())
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("series {i}"));
        let points = entry
            .get("points")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad(format!("series {i} needs 'points'")))?
            .iter()
            .map(|p| {
                let pair = p.as_array().filter(|a| a.len() == 2);
                match pair {
                    Some(a) => match (a[0].as_f64(), a[1].as_f64()) {
                        (Some(x), Some(y)) => Ok([x, y]),
                        _ => Err(bad(format!("series {i}: point entries must be numbers"))),
                    },
                    None => Err(bad(format!("series {i}: each point must be [x, y]"))),
                }
            })
            .collect::<Result<Vec<[f64; 2]>>>()?;
        series.push(Series { label, points });
    }
    let kind = match args.kind {
        Kind::Scatter => PlotKind::Scatter,
        Kind::Line => PlotKind::Line,
    };
    let svg = render_svg(&series, kind)?;
    topsig::io::write_string(&out, &svg)?;
    ctx.record_output(&out);
    ctx.field_int("series", series.len() as i64);
    ctx.field_str("kind", &format!("{:?}", args.kind).to_lowercase());
    ctx.finish("plot");
    Ok(())
}
