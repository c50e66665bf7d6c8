use std::path::PathBuf;

use clap::Subcommand;
use topsig::complex::{build_complex, SimplicialComplex};
use topsig::delaunay;
use topsig::error::{Error, Result};
use topsig::io;
use topsig::rng::CounterRng;

use super::load_complex;
use crate::context::Context;

#[derive(Subcommand)]
pub enum Cmd {
    /// Close a facet list into a complex.
    Build {
        /// Facet file: {"n_vertices": N, "facets": [[...], ...]}.
        #[arg(long)]
        facets: PathBuf,
    },
    /// Check inclusion closure and canonical ordering.
    Validate {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Signed boundary operator of one order.
    Boundary {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Triangulate points (given or seeded-uniform) and punch holes.
    Delaunay {
        /// Number of uniform points in the unit square (uses --seed).
        #[arg(long, conflicts_with = "points")]
        n: Option<usize>,
        /// Points file: {"points": [[x, y], ...]}.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Hole centers as "x,y;x,y".
        #[arg(long, default_value = "")]
        holes: String,
        /// Also write the coordinates used.
        #[arg(long)]
        points_out: Option<PathBuf>,
    },
}

pub fn run(ctx: &mut Context, cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Build { facets } => {
            ctx.track(&facets)?;
            let (facet_list, n_vertices) = io::read_facets(&facets)?;
            let complex = build_complex(&facet_list, n_vertices)?;
            describe(ctx, &complex);
            if let Some(out) = ctx.out.clone() {
                io::write_complex(&out, &complex)?;
                ctx.record_output(&out);
            }
            ctx.finish("complex build");
            Ok(())
        }
        Cmd::Validate { complex } => {
            ctx.track(&complex)?;
            let (n_vertices, lists) = io::read_complex_lists(&complex)?;
            let candidate = SimplicialComplex::from_simplex_lists_unchecked(n_vertices, lists);
            match candidate.validate() {
                Ok(()) => {
                    ctx.field_bool("ok", true);
                }
                Err(violation) => {
                    ctx.field_bool("ok", false);
                    ctx.field_str("violation", &violation.to_string());
                }
            }
            ctx.finish("complex validate");
            Ok(())
        }
        Cmd::Boundary { complex, order } => {
            let x = load_complex(ctx, &complex)?;
            let b = x.boundary_matrix(order)?;
            ctx.field_int("rows", b.rows as i64);
            ctx.field_int("cols", b.cols as i64);
            ctx.field_int("order", order as i64);
            if let Some(out) = ctx.out.clone() {
                ctx.write_matrix(&out, &b.to_dense())?;
            }
            ctx.finish("complex boundary");
            Ok(())
        }
        Cmd::Delaunay { n, points, holes, points_out } => {
            let hole_centers = parse_holes(&holes)?;
            let coords: Vec<[f64; 2]> = match (n, points) {
                (Some(n), None) => CounterRng::new(ctx.seed).unit_square_points(n),
                (None, Some(path)) => {
                    ctx.track(&path)?;
                    io::read_points(&path)?
                }
                _ => {
                    return Err(Error::InvalidParameter {
                        name: "--n/--points",
                        reason: "give exactly one of --n or --points".into(),
                    })
                }
            };
            let complex = delaunay::delaunay_complex(&coords, &hole_centers)?;
            describe(ctx, &complex);
            if let Some(out) = ctx.out.clone() {
                io::write_complex(&out, &complex)?;
                ctx.record_output(&out);
            }
            if let Some(pout) = points_out {
                io::write_points(&pout, &coords)?;
                ctx.record_output(&pout);
            }
            ctx.finish("complex delaunay");
            Ok(())
        }
    }
}

fn describe(ctx: &mut Context, complex: &SimplicialComplex) {
    ctx.field_int("n_vertices", complex.n_vertices() as i64);
    ctx.field_int("top_order", complex.top_order() as i64);
    for k in 0..=complex.top_order() {
        ctx.field_int(&format!("count_{k}"), complex.num_simplices(k) as i64);
    }
}

fn parse_holes(spec: &str) -> Result<Vec<[f64; 2]>> {
    if spec.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in spec.split(';') {
        let coords: Vec<&str> = part.split(',').collect();
        let bad = || Error::InvalidParameter {
            name: "--holes",
            reason: format!("expected 'x,y;x,y', got '{spec}'"),
        };
        if coords.len() != 2 {
            return Err(bad());
        }
        let x: f64 = coords[0].trim().parse().map_err(|_| bad())?;
        let y: f64 = coords[1].trim().parse().map_err(|_| bad())?;
        out.push([x, y]);
    }
    Ok(out)
}
