use std::path::{Path, PathBuf};

use clap::Subcommand;
use ndarray::Array1;
use topsig::error::{Error, Result};
use topsig::hodge::hodge_laplacian;
use topsig::io;
use topsig::rng::CounterRng;
use topsig::snn::{
    check_orientation_equivariance, snn_forward, Activation, FlowArch, LevelSignals,
    OrientationFlip,
};

use super::{load_complex, load_signal};
use crate::context::{load_json, Context};

#[derive(Subcommand)]
pub enum Cmd {
    /// Run the three-level forward pass on (node, edge, triangle) signals.
    Forward {
        #[arg(long)]
        complex: PathBuf,
        /// Architecture JSON: {"depth": K, "activation": "tanh", ...}.
        #[arg(long)]
        arch: PathBuf,
        #[arg(long)]
        nodes: Option<PathBuf>,
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long)]
        triangles: Option<PathBuf>,
    },
    /// Measure the orientation-equivariance deviation over random flips.
    CheckEquivariance {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        arch: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

struct ArchSpec {
    depth: usize,
    activation: Activation,
    layer_weights: Vec<f64>,
    level_scales: Option<Vec<[f64; 3]>>,
}

fn parse_activation(tag: &str) -> Result<Activation> {
    match tag {
        "identity" => Ok(Activation::Identity),
        "tanh" => Ok(Activation::Tanh),
        "relu" => Ok(Activation::Relu),
        other => Err(Error::InvalidParameter {
            name: "activation",
            reason: format!("unknown activation '{other}' (identity|tanh|relu)"),
        }),
    }
}

fn load_arch(ctx: &mut Context, path: &Path) -> Result<ArchSpec> {
    let bytes = ctx.input_bytes(path)?;
    let value = load_json(path, &bytes)?;
    let bad = |reason: String| Error::Malformed { path: path.display().to_string(), reason };
    let depth = value
        .get("depth")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| bad("missing integer 'depth'".into()))? as usize;
    let activation = parse_activation(
        value
            .get("activation")
            .and_then(|v| v.as_str())
            .ok_or_else(|| bad("missing string 'activation'".into()))?,
    )?;
    let layer_weights = match value.get("layer_weights") {
        Some(v) => v
            .as_array()
            .ok_or_else(|| bad("'layer_weights' must be an array".into()))?
            .iter()
            .map(|w| w.as_f64().ok_or_else(|| bad("layer weight must be a number".into())))
            .collect::<Result<Vec<f64>>>()?,
        None => vec![1.0; depth],
    };
    if layer_weights.len() != depth {
        return Err(bad(format!(
            "expected {depth} layer weights, got {}",
            layer_weights.len()
        )));
    }
    let level_scales = match value.get("level_scales") {
        Some(v) => {
            let rows = v
                .as_array()
                .ok_or_else(|| bad("'level_scales' must be an array".into()))?;
            let mut out = Vec::with_capacity(rows.len());
            for row in rows {
                let triple = row
                    .as_array()
                    .filter(|r| r.len() == 3)
                    .ok_or_else(|| bad("each level scale must be [v, f, t]".into()))?;
                let mut scales = [0.0; 3];
                for (slot, s) in scales.iter_mut().zip(triple) {
                    *slot = s
                        .as_f64()
                        .ok_or_else(|| bad("level scale must be a number".into()))?;
                }
                out.push(scales);
            }
            Some(out)
        }
        None => None,
    };
    Ok(ArchSpec { depth, activation, layer_weights, level_scales })
}

pub fn run(ctx: &mut Context, cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Forward { complex, arch, nodes, edges, triangles } => {
            let x = load_complex(ctx, &complex)?;
            let spec = load_arch(ctx, &arch)?;
            let mut input = LevelSignals::zeros(&x);
            if let Some(path) = nodes {
                input.nodes = load_signal(ctx, &path, x.num_simplices(0), "node signal")?;
            }
            if let Some(path) = edges {
                input.edges = load_signal(ctx, &path, x.num_simplices(1), "edge signal")?;
            }
            if let Some(path) = triangles {
                input.triangles =
                    load_signal(ctx, &path, x.num_simplices(2), "triangle signal")?;
            }
            let out_signals = snn_forward(
                &x,
                &input,
                spec.depth,
                &spec.activation,
                spec.level_scales.as_deref(),
            )?;
            ctx.field_int("depth", spec.depth as i64);
            ctx.field_float("node_norm", norm(&out_signals.nodes));
            ctx.field_float("edge_norm", norm(&out_signals.edges));
            ctx.field_float("triangle_norm", norm(&out_signals.triangles));
            if let Some(out) = ctx.out.clone() {
                let body = format!(
                    "{{\"nodes\": {}, \"edges\": {}, \"triangles\": {}}}\n",
                    io::vector_json(&out_signals.nodes),
                    io::vector_json(&out_signals.edges),
                    io::vector_json(&out_signals.triangles),
                );
                io::write_string(&out, &body)?;
                ctx.record_output(&out);
            }
            ctx.finish("snn forward");
            Ok(())
        }
        Cmd::CheckEquivariance { complex, arch, trials } => {
            let x = load_complex(ctx, &complex)?;
            let spec = load_arch(ctx, &arch)?;
            let l1 = hodge_laplacian(&x, 1)?;
            let n_edges = x.num_simplices(1);
            let flow_arch = FlowArch { layer_weights: spec.layer_weights.clone() };
            let mut rng = CounterRng::new(ctx.seed);
            let mut worst = 0.0_f64;
            for _ in 0..trials {
                let theta = OrientationFlip::new(
                    (0..n_edges).map(|_| if rng.uniform() < 0.5 { 1 } else { -1 }).collect(),
                )?;
                let f = Array1::from(
                    (0..n_edges).map(|_| rng.uniform_in(-2.0, 2.0)).collect::<Vec<_>>(),
                );
                let dev = check_orientation_equivariance(
                    &flow_arch,
                    &l1.view(),
                    &spec.activation,
                    &f,
                    &theta,
                )?;
                worst = worst.max(dev);
            }
            ctx.field_int("trials", trials as i64);
            ctx.field_float("max_deviation", worst);
            ctx.field_bool("equivariant", worst <= 1e-10);
            ctx.finish("snn check-equivariance");
            Ok(())
        }
    }
}

fn norm(v: &Array1<f64>) -> f64 {
    v.dot(v).sqrt()
}
