use std::path::PathBuf;

use clap::Subcommand;
use topsig::error::{Error, Result};
use topsig::hodge::hodge_laplacian;
use topsig::io;
use topsig::signal::Signal;
use topsig::spectral;

use super::{load_complex, load_signal};
use crate::context::Context;

#[derive(Subcommand)]
pub enum Cmd {
    /// Eigendecomposition of a Hodge Laplacian (or an explicit matrix).
    Eig {
        #[arg(long, requires = "order", conflicts_with = "matrix")]
        complex: Option<PathBuf>,
        #[arg(long)]
        order: Option<usize>,
        /// Matrix file: {"rows": R, "cols": C, "data": [[...], ...]}.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Transform a signal into (or out of) the eigenbasis.
    Gft {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Apply a named frequency response.
    Filter {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        signal: PathBuf,
        /// identity | lowpass:<alpha> | heat:<t>
        #[arg(long)]
        response: String,
    },
    /// Spectral node coordinates from the graph Laplacian.
    Eigenmap {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dims: usize,
        #[arg(long)]
        normalized: bool,
    },
}

fn operator(ctx: &mut Context, complex: &Option<PathBuf>, order: Option<usize>, matrix: &Option<PathBuf>) -> Result<ndarray::Array2<f64>> {
    match (complex, matrix) {
        (Some(path), None) => {
            let x = load_complex(ctx, path)?;
            hodge_laplacian(&x, order.expect("clap enforces order"))
        }
        (None, Some(path)) => {
            ctx.track(path)?;
            io::read_matrix(path)
        }
        _ => Err(Error::InvalidParameter {
            name: "--complex/--matrix",
            reason: "give exactly one operator source".into(),
        }),
    }
}

pub fn run(ctx: &mut Context, cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Eig { complex, order, matrix } => {
            let m = operator(ctx, &complex, order, &matrix)?;
            let basis = spectral::sym_eig(&m.view())?;
            ctx.field_int("size", basis.len() as i64);
            if !basis.is_empty() {
                ctx.field_float("lambda_min", basis.eigenvalues[0]);
                ctx.field_float("lambda_max", basis.eigenvalues[basis.len() - 1]);
            }
            if let Some(out) = ctx.out.clone() {
                let mut body = String::from("{\"eigenvalues\": ");
                body.push_str(&io::vector_json(&basis.eigenvalues));
                body.push_str(", \"vectors\": ");
                body.push_str(io::matrix_to_json(&basis.eigenvectors).trim_end());
                body.push_str("}\n");
                io::write_string(&out, &body)?;
                ctx.record_output(&out);
            }
            ctx.finish("spectral eig");
            Ok(())
        }
        Cmd::Gft { complex, order, signal, inverse } => {
            let x = load_complex(ctx, &complex)?;
            let n = x.num_simplices(order);
            let values = load_signal(ctx, &signal, n, "signal")?;
            let basis = spectral::sym_eig(&hodge_laplacian(&x, order)?.view())?;
            let result = if inverse {
                spectral::igft(&basis, &values, order)?.values
            } else {
                spectral::gft(&basis, &Signal::new(values, order))?
            };
            ctx.field_float("norm", result.dot(&result).sqrt());
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &result)?;
            }
            ctx.finish("spectral gft");
            Ok(())
        }
        Cmd::Filter { complex, order, signal, response } => {
            let x = load_complex(ctx, &complex)?;
            let n = x.num_simplices(order);
            let values = load_signal(ctx, &signal, n, "signal")?;
            let h = parse_response(&response)?;
            let basis = spectral::sym_eig(&hodge_laplacian(&x, order)?.view())?;
            let filtered = spectral::apply_filter(&basis, &*h, &Signal::new(values, order))?;
            ctx.field_str("response", &response);
            ctx.field_float("norm", filtered.norm());
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &filtered.values)?;
            }
            ctx.finish("spectral filter");
            Ok(())
        }
        Cmd::Eigenmap { complex, dims, normalized } => {
            let x = load_complex(ctx, &complex)?;
            let l0 = hodge_laplacian(&x, 0)?;
            let coords = spectral::laplacian_eigenmap(&l0.view(), dims, normalized)?;
            ctx.field_int("nodes", coords.nrows() as i64);
            ctx.field_int("dims", dims as i64);
            if let Some(out) = ctx.out.clone() {
                ctx.write_matrix(&out, &coords)?;
            }
            ctx.finish("spectral eigenmap");
            Ok(())
        }
    }
}

fn parse_response(spec: &str) -> Result<Box<dyn Fn(f64) -> f64>> {
    let bad = |reason: String| Error::InvalidParameter { name: "--response", reason };
    if spec == "identity" {
        return Ok(Box::new(|_| 1.0));
    }
    if let Some(rest) = spec.strip_prefix("lowpass:") {
        let alpha: f64 = rest.parse().map_err(|_| bad(format!("bad alpha in '{spec}'")))?;
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(bad("alpha must be positive".to_string()));
        }
        return Ok(Box::new(move |lambda| 1.0 / (1.0 + alpha * lambda)));
    }
    if let Some(rest) = spec.strip_prefix("heat:") {
        let t: f64 = rest.parse().map_err(|_| bad(format!("bad time in '{spec}'")))?;
        return Ok(Box::new(move |lambda| (-t * lambda).exp()));
    }
    Err(bad(format!("unknown response '{spec}'")))
}
