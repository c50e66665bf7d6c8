use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use topsig::error::Result;
use topsig::flow::{self, FlowOperator, LabeledFlow};
use topsig::io;
use topsig::signal::Signal;

use super::{load_complex, load_signal};
use crate::context::Context;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Operator {
    Hodge,
    Edge,
    Linegraph,
}

impl From<Operator> for FlowOperator {
    fn from(op: Operator) -> Self {
        match op {
            Operator::Hodge => FlowOperator::Hodge,
            Operator::Edge => FlowOperator::Edge,
            Operator::Linegraph => FlowOperator::LineGraph,
        }
    }
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Low-pass an edge flow through a chosen regularizer.
    Denoise {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        flow: PathBuf,
        #[arg(long)]
        op: Operator,
        #[arg(long)]
        alpha: f64,
    },
    /// Fill in unmeasured edges from labeled ones.
    Interpolate {
        #[arg(long)]
        complex: PathBuf,
        /// Labels CSV with header edge_index,value.
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// Include the curl penalty block.
        #[arg(long)]
        triangles: bool,
    },
    /// Net in-minus-out flow at each node.
    Divergence {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        flow: PathBuf,
    },
}

pub fn run(ctx: &mut Context, cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Denoise { complex, flow, op, alpha } => {
            let x = load_complex(ctx, &complex)?;
            let values = load_signal(ctx, &flow, x.num_simplices(1), "edge flow")?;
            let out_signal = flow::denoise_flow(&x, &Signal::edge(values), alpha, op.into())?;
            ctx.field_str("operator", &format!("{op:?}").to_lowercase());
            ctx.field_float("alpha", alpha);
            ctx.field_float("norm", out_signal.norm());
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &out_signal.values)?;
            }
            ctx.finish("flow denoise");
            Ok(())
        }
        Cmd::Interpolate { complex, labels, alpha, triangles } => {
            let x = load_complex(ctx, &complex)?;
            ctx.track(&labels)?;
            let pairs = io::read_labels_csv(&labels, "edge_index")?;
            let labeled = LabeledFlow::new(pairs, x.num_simplices(1))?;
            let out_signal = flow::interpolate_flow(&x, &labeled, alpha, triangles)?;
            ctx.field_int("labeled", labeled.pairs().len() as i64);
            ctx.field_float("alpha", alpha);
            ctx.field_bool("triangles", triangles);
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &out_signal.values)?;
            }
            ctx.finish("flow interpolate");
            Ok(())
        }
        Cmd::Divergence { complex, flow } => {
            let x = load_complex(ctx, &complex)?;
            let values = load_signal(ctx, &flow, x.num_simplices(1), "edge flow")?;
            let div = flow::divergence(&x, &Signal::edge(values))?;
            ctx.field_float("norm", div.norm());
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &div.values)?;
            }
            ctx.finish("flow divergence");
            Ok(())
        }
    }
}
