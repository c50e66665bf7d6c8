use std::path::PathBuf;

use clap::Subcommand;
use topsig::error::Result;
use topsig::hodge;
use topsig::io;
use topsig::signal::Signal;

use super::{load_complex, load_signal};
use crate::context::Context;

#[derive(Subcommand)]
pub enum Cmd {
    /// Hodge Laplacian matrix of one order.
    Laplacian {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Split an edge flow into gradient, curl, and harmonic parts.
    Decompose {
        #[arg(long)]
        complex: PathBuf,
        /// Edge signal CSV in canonical edge order.
        #[arg(long)]
        flow: PathBuf,
    },
    /// Orthonormal basis of the harmonic space.
    Basis {
        #[arg(long)]
        complex: PathBuf,
    },
}

pub fn run(ctx: &mut Context, cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Laplacian { complex, order } => {
            let x = load_complex(ctx, &complex)?;
            let l = hodge::hodge_laplacian(&x, order)?;
            ctx.field_int("size", l.nrows() as i64);
            ctx.field_int("order", order as i64);
            if let Some(out) = ctx.out.clone() {
                ctx.write_matrix(&out, &l)?;
            }
            ctx.finish("hodge laplacian");
            Ok(())
        }
        Cmd::Decompose { complex, flow } => {
            let x = load_complex(ctx, &complex)?;
            let values = load_signal(ctx, &flow, x.num_simplices(1), "edge flow")?;
            let d = hodge::hodge_decompose(&x, &Signal::edge(values))?;
            ctx.field_float("gradient_norm", d.gradient.norm());
            ctx.field_float("curl_norm", d.curl.norm());
            ctx.field_float("harmonic_norm", d.harmonic.norm());
            ctx.field_floats("triangle_potentials", &d.triangle_potentials);
            if let Some(out) = ctx.out.clone() {
                io::write_decomposition(&out, &d)?;
                ctx.record_output(&out);
            }
            ctx.finish("hodge decompose");
            Ok(())
        }
        Cmd::Basis { complex } => {
            let x = load_complex(ctx, &complex)?;
            let basis = hodge::harmonic_basis(&x)?;
            ctx.field_int("dimension", basis.ncols() as i64);
            if let Some(out) = ctx.out.clone() {
                ctx.write_matrix(&out, &basis)?;
            }
            ctx.finish("hodge basis");
            Ok(())
        }
    }
}
