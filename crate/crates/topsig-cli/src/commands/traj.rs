use std::path::PathBuf;

use clap::Subcommand;
use ndarray::Array2;
use topsig::error::Result;
use topsig::flow::{embed_trajectory, trajectory_flow, Trajectory};
use topsig::io;

use super::load_complex;
use crate::context::Context;

#[derive(Subcommand)]
pub enum Cmd {
    /// Signed edge indicator of a walk.
    Flow {
        #[arg(long)]
        complex: PathBuf,
        /// Trajectory JSON: {"vertices": [...]}.
        #[arg(long)]
        traj: PathBuf,
    },
    /// Running projection of a walk into the harmonic space.
    Embed {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        traj: PathBuf,
    },
}

pub fn run(ctx: &mut Context, cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Flow { complex, traj } => {
            let x = load_complex(ctx, &complex)?;
            ctx.track(&traj)?;
            let vertices = io::read_trajectory(&traj)?;
            let f = trajectory_flow(&x, &Trajectory::new(vertices))?;
            ctx.field_int(
                "support",
                f.values.iter().filter(|&&v| v != 0.0).count() as i64,
            );
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &f.values)?;
            }
            ctx.finish("traj flow");
            Ok(())
        }
        Cmd::Embed { complex, traj } => {
            let x = load_complex(ctx, &complex)?;
            ctx.track(&traj)?;
            let vertices = io::read_trajectory(&traj)?;
            let points = embed_trajectory(&x, &Trajectory::new(vertices))?;
            let dim = points[0].len();
            let mut m = Array2::<f64>::zeros((points.len(), dim));
            for (i, p) in points.iter().enumerate() {
                m.row_mut(i).assign(p);
            }
            ctx.field_int("steps", (points.len() - 1) as i64);
            ctx.field_int("harmonic_dim", dim as i64);
            ctx.field_floats("final", points.last().expect("at least the origin"));
            if let Some(out) = ctx.out.clone() {
                ctx.write_matrix(&out, &m)?;
            }
            ctx.finish("traj embed");
            Ok(())
        }
    }
}
