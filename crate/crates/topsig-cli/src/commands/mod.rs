pub mod complex;
pub mod flow;
pub mod hg;
pub mod hodge;
pub mod plot;
pub mod snn;
pub mod spectral;
pub mod traj;

use std::path::Path;

use ndarray::Array1;
use topsig::error::{Error, Result};
use topsig::io;
use topsig::SimplicialComplex;

use crate::context::Context;

/// Read, hash, and parse a complex file.
pub fn load_complex(ctx: &mut Context, path: &Path) -> Result<SimplicialComplex> {
    ctx.track(path)?;
    io::read_complex(path)
}

/// Read, hash, and parse a signal CSV against an expected length.
pub fn load_signal(ctx: &mut Context, path: &Path, expected: usize, what: &str) -> Result<Array1<f64>> {
    ctx.track(path)?;
    let values = io::read_signal_csv(path)?;
    if values.len() != expected {
        return Err(Error::Malformed {
            path: path.display().to_string(),
            reason: format!("{what} needs {expected} entries, file has {}", values.len()),
        });
    }
    Ok(values)
}

pub fn require_out(ctx: &Context, command: &str) -> Result<std::path::PathBuf> {
    ctx.out.clone().ok_or_else(|| Error::InvalidParameter {
        name: "--out",
        reason: format!("{command} needs an output path"),
    })
}
