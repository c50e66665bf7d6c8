use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use ndarray::{Array1, Array2};
use topsig::error::{Error, Result};
use topsig::hg_learn::{denoise, interpolate_hg, RegularizerKind, RegularizerSpec};
use topsig::hypergraph::{
    clique_expansion, dual, expansion_laplacian, line_expansion, line_graph, star_expansion,
    Hypergraph, NodeProvenance,
};
use topsig::io;
use topsig::tensor::{
    adjacency_tensor, adjacency_tensor_general, hg_shift, hgft, ihgft, laplacian_tensor,
    sym_cp_decompose, HgFourierBasis, HgftCoefficients, LaplacianKind, SymTensor,
    UniformNormalization,
};

use crate::context::{load_json, Context};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExpandKind {
    Star,
    Clique,
    LineGraph,
    LineExpansion,
    Dual,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TensorNorm {
    None,
    Cooper,
    Hu,
    General,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Regularizer {
    Quadratic,
    Lovasz1,
    Lovasz2,
    TensorTv,
}

impl From<Regularizer> for RegularizerKind {
    fn from(r: Regularizer) -> Self {
        match r {
            Regularizer::Quadratic => RegularizerKind::QuadraticClique,
            Regularizer::Lovasz1 => RegularizerKind::LovaszP1,
            Regularizer::Lovasz2 => RegularizerKind::LovaszP2,
            Regularizer::TensorTv => RegularizerKind::TensorTv,
        }
    }
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Matrix expansion of a hypergraph (or its dual hypergraph).
    Expand {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        kind: ExpandKind,
    },
    /// Laplacian of an expansion graph.
    Laplacian {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        kind: ExpandKind,
        #[arg(long)]
        normalized: bool,
    },
    /// Adjacency (or general) tensor of a hypergraph.
    Tensor {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        norm: TensorNorm,
        /// Emit the Laplacian tensor instead of the adjacency.
        #[arg(long)]
        laplacian: bool,
    },
    /// One application of the tensor shift to a vertex signal.
    Shift {
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        /// Shift tensor file (alternative to building from the hypergraph).
        #[arg(long)]
        tensor: Option<PathBuf>,
        #[arg(long, default_value = "none")]
        norm: TensorNorm,
        #[arg(long)]
        signal: PathBuf,
    },
    /// Symmetric CP decomposition of a tensor into a Fourier basis.
    Cp {
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long)]
        rank: usize,
    },
    /// Hypergraph Fourier transform (or its inverse).
    Hgft {
        /// Basis file produced by `hg cp`.
        #[arg(long)]
        basis: PathBuf,
        #[arg(long)]
        order: usize,
        /// Forward: vertex signal CSV.
        #[arg(long, conflicts_with = "coefficients")]
        signal: Option<PathBuf>,
        /// Inverse: coefficient file produced by the forward transform.
        #[arg(long)]
        coefficients: Option<PathBuf>,
    },
    /// Regularized denoising of a vertex signal.
    Denoise {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        reg: Regularizer,
        #[arg(long)]
        alpha: f64,
    },
    /// Regularized interpolation from labeled vertices.
    Interpolate {
        #[arg(long)]
        hypergraph: PathBuf,
        /// Labels CSV with header vertex,value.
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        reg: Regularizer,
        #[arg(long)]
        alpha: f64,
    },
}

fn load_hypergraph(ctx: &mut Context, path: &Path) -> Result<Hypergraph> {
    ctx.track(path)?;
    io::read_hypergraph(path)
}

fn load_vertex_signal(ctx: &mut Context, path: &Path, n: usize) -> Result<Array1<f64>> {
    ctx.track(path)?;
    let values = io::read_signal_csv(path)?;
    if values.len() != n {
        return Err(Error::Malformed {
            path: path.display().to_string(),
            reason: format!("vertex signal needs {n} entries, file has {}", values.len()),
        });
    }
    Ok(values)
}

fn provenance_tag(p: &NodeProvenance) -> String {
    match p {
        NodeProvenance::Vertex(v) => format!("v{v}"),
        NodeProvenance::Hyperedge(e) => format!("e{e}"),
        NodeProvenance::Incidence(v, e) => format!("v{v}xe{e}"),
    }
}

fn expansion_graph(h: &Hypergraph, kind: ExpandKind) -> Result<topsig::hypergraph::ExpansionGraph> {
    Ok(match kind {
        ExpandKind::Star => star_expansion(h),
        ExpandKind::Clique => clique_expansion(h),
        ExpandKind::LineGraph => line_graph(h),
        ExpandKind::LineExpansion => line_expansion(h),
        ExpandKind::Dual => {
            return Err(Error::InvalidParameter {
                name: "--kind",
                reason: "the dual is a hypergraph, not a graph".into(),
            })
        }
    })
}

fn build_tensor(h: &Hypergraph, norm: TensorNorm) -> Result<SymTensor> {
    match norm {
        TensorNorm::None => adjacency_tensor(h, UniformNormalization::Plain),
        TensorNorm::Cooper => adjacency_tensor(h, UniformNormalization::Cooper),
        TensorNorm::Hu => adjacency_tensor(h, UniformNormalization::Hu),
        TensorNorm::General => adjacency_tensor_general(h),
    }
}

fn basis_to_json(basis: &HgFourierBasis, residual: f64) -> String {
    let completed: Vec<String> = basis.completed.iter().map(|c| c.to_string()).collect();
    format!(
        "{{\"order\": {}, \"rank\": {}, \"residual\": {}, \"frequencies\": {}, \"completed\": [{}], \"basis\": {}}}\n",
        basis.order,
        basis.rank,
        io::fmt_f64(residual),
        io::vector_json(&Array1::from(basis.frequencies.clone())),
        completed.join(", "),
        io::matrix_to_json(&basis.basis).trim_end(),
    )
}

fn read_basis(ctx: &mut Context, path: &Path) -> Result<HgFourierBasis> {
    let bytes = ctx.input_bytes(path)?;
    let value = load_json(path, &bytes)?;
    let bad = |reason: String| Error::Malformed { path: path.display().to_string(), reason };
    let order = value.get("order").and_then(|v| v.as_u64()).ok_or_else(|| bad("missing 'order'".into()))? as usize;
    let rank = value.get("rank").and_then(|v| v.as_u64()).ok_or_else(|| bad("missing 'rank'".into()))? as usize;
    let frequencies: Vec<f64> = value
        .get("frequencies")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("missing 'frequencies'".into()))?
        .iter()
        .map(|v| v.as_f64().ok_or_else(|| bad("frequency must be a number".into())))
        .collect::<Result<_>>()?;
    let completed: Vec<bool> = value
        .get("completed")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("missing 'completed'".into()))?
        .iter()
        .map(|v| v.as_bool().ok_or_else(|| bad("completed flag must be a bool".into())))
        .collect::<Result<_>>()?;
    let matrix = value.get("basis").ok_or_else(|| bad("missing 'basis'".into()))?;
    let rows = matrix.get("rows").and_then(|v| v.as_u64()).ok_or_else(|| bad("basis needs 'rows'".into()))? as usize;
    let cols = matrix.get("cols").and_then(|v| v.as_u64()).ok_or_else(|| bad("basis needs 'cols'".into()))? as usize;
    let data = matrix
        .get("data")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("basis needs 'data'".into()))?;
    let mut m = Array2::<f64>::zeros((rows, cols));
    for (i, row) in data.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad(format!("basis row {i} must be an array")))?;
        for (j, v) in row.iter().enumerate() {
            m[[i, j]] = v.as_f64().ok_or_else(|| bad("basis entry must be a number".into()))?;
        }
    }
    Ok(HgFourierBasis { basis: m, frequencies, completed, rank, order })
}

fn coefficients_to_json(c: &HgftCoefficients) -> String {
    let signs: Vec<String> = c.signs.iter().map(|s| s.to_string()).collect();
    format!(
        "{{\"order\": {}, \"powered\": {}, \"signs\": [{}]}}\n",
        c.order,
        io::vector_json(&c.powered),
        signs.join(", "),
    )
}

fn read_coefficients(ctx: &mut Context, path: &Path) -> Result<HgftCoefficients> {
    let bytes = ctx.input_bytes(path)?;
    let value = load_json(path, &bytes)?;
    let bad = |reason: String| Error::Malformed { path: path.display().to_string(), reason };
    let order = value.get("order").and_then(|v| v.as_u64()).ok_or_else(|| bad("missing 'order'".into()))? as usize;
    let powered: Vec<f64> = value
        .get("powered")
        .and_then(|v| v.as_array())
        .ok_or_else(|| bad("missing 'powered'".into()))?
        .iter()
        .map(|v| v.as_f64().ok_or_else(|| bad("coefficient must be a number".into())))
        .collect::<Result<_>>()?;
    match value.get("signs").and_then(|v| v.as_array()) {
        Some(signs) => {
            let signs: Vec<i8> = signs
                .iter()
                .map(|v| {
                    v.as_i64()
                        .filter(|s| *s == 1 || *s == -1)
                        .map(|s| s as i8)
                        .ok_or_else(|| bad("signs must be +1 or -1".into()))
                })
                .collect::<Result<_>>()?;
            if signs.len() != powered.len() {
                return Err(bad("signs and powered must have equal length".into()));
            }
            Ok(HgftCoefficients { powered: Array1::from(powered), signs, order })
        }
        None => HgftCoefficients::from_raw(Array1::from(powered), order),
    }
}

pub fn run(ctx: &mut Context, cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Expand { hypergraph, kind } => {
            let h = load_hypergraph(ctx, &hypergraph)?;
            if matches!(kind, ExpandKind::Dual) {
                let d = dual(&h);
                ctx.field_int("n_vertices", d.n_vertices() as i64);
                ctx.field_int("n_hyperedges", d.n_hyperedges() as i64);
                if let Some(out) = ctx.out.clone() {
                    io::write_hypergraph(&out, &d)?;
                    ctx.record_output(&out);
                }
            } else {
                let g = expansion_graph(&h, kind)?;
                ctx.field_int("nodes", g.adjacency.nrows() as i64);
                if let Some(out) = ctx.out.clone() {
                    let tags: Vec<String> =
                        g.provenance.iter().map(|p| format!("\"{}\"", provenance_tag(p))).collect();
                    let body = format!(
                        "{{\"provenance\": [{}], \"adjacency\": {}}}\n",
                        tags.join(", "),
                        io::matrix_to_json(&g.adjacency).trim_end(),
                    );
                    io::write_string(&out, &body)?;
                    ctx.record_output(&out);
                }
            }
            ctx.finish("hg expand");
            Ok(())
        }
        Cmd::Laplacian { hypergraph, kind, normalized } => {
            let h = load_hypergraph(ctx, &hypergraph)?;
            let g = expansion_graph(&h, kind)?;
            let l = expansion_laplacian(&g, normalized);
            ctx.field_int("size", l.nrows() as i64);
            ctx.field_bool("normalized", normalized);
            if let Some(out) = ctx.out.clone() {
                ctx.write_matrix(&out, &l)?;
            }
            ctx.finish("hg laplacian");
            Ok(())
        }
        Cmd::Tensor { hypergraph, norm, laplacian } => {
            let h = load_hypergraph(ctx, &hypergraph)?;
            let a = build_tensor(&h, norm)?;
            let t = if laplacian {
                let kind = match norm {
                    TensorNorm::Hu => LaplacianKind::Hu,
                    TensorNorm::General => LaplacianKind::General,
                    _ => {
                        return Err(Error::InvalidParameter {
                            name: "--norm",
                            reason: "Laplacian tensors exist for hu and general".into(),
                        })
                    }
                };
                laplacian_tensor(&a, kind, &h)?
            } else {
                a
            };
            ctx.field_int("order", t.order as i64);
            ctx.field_int("dim", t.dim as i64);
            ctx.field_int("keys", t.num_keys() as i64);
            if let Some(out) = ctx.out.clone() {
                io::write_tensor(&out, &t)?;
                ctx.record_output(&out);
            }
            ctx.finish("hg tensor");
            Ok(())
        }
        Cmd::Shift { hypergraph, tensor, norm, signal } => {
            let s = match (hypergraph, tensor) {
                (Some(hpath), None) => {
                    let h = load_hypergraph(ctx, &hpath)?;
                    build_tensor(&h, norm)?
                }
                (None, Some(tpath)) => {
                    ctx.track(&tpath)?;
                    io::read_tensor(&tpath)?
                }
                _ => {
                    return Err(Error::InvalidParameter {
                        name: "--hypergraph/--tensor",
                        reason: "give exactly one shift source".into(),
                    })
                }
            };
            let y = load_vertex_signal(ctx, &signal, s.dim)?;
            let shifted = hg_shift(&s, &y)?;
            ctx.field_float("norm", shifted.dot(&shifted).sqrt());
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &shifted)?;
            }
            ctx.finish("hg shift");
            Ok(())
        }
        Cmd::Cp { tensor, rank } => {
            ctx.track(&tensor)?;
            let t = io::read_tensor(&tensor)?;
            let (basis, diag) = sym_cp_decompose(&t, rank, ctx.seed)?;
            ctx.field_int("rank", basis.rank as i64);
            ctx.field_float("residual", diag.residual);
            ctx.field_bool("converged", diag.converged.iter().all(|&c| c));
            if let Some(out) = ctx.out.clone() {
                io::write_string(&out, &basis_to_json(&basis, diag.residual))?;
                ctx.record_output(&out);
            }
            ctx.finish("hg cp");
            Ok(())
        }
        Cmd::Hgft { basis, order, signal, coefficients } => {
            let fourier = read_basis(ctx, &basis)?;
            match (signal, coefficients) {
                (Some(spath), None) => {
                    let y = load_vertex_signal(ctx, &spath, fourier.basis.nrows())?;
                    let coeffs = hgft(&fourier, &y, order)?;
                    ctx.field_float("norm", coeffs.powered.dot(&coeffs.powered).sqrt());
                    if let Some(out) = ctx.out.clone() {
                        io::write_string(&out, &coefficients_to_json(&coeffs))?;
                        ctx.record_output(&out);
                    }
                }
                (None, Some(cpath)) => {
                    let coeffs = read_coefficients(ctx, &cpath)?;
                    let y = ihgft(&fourier, &coeffs, order)?;
                    ctx.field_float("norm", y.dot(&y).sqrt());
                    if let Some(out) = ctx.out.clone() {
                        ctx.write_vector(&out, &y)?;
                    }
                }
                _ => {
                    return Err(Error::InvalidParameter {
                        name: "--signal/--coefficients",
                        reason: "give a signal (forward) or coefficients (inverse)".into(),
                    })
                }
            }
            ctx.finish("hg hgft");
            Ok(())
        }
        Cmd::Denoise { hypergraph, signal, reg, alpha } => {
            let h = load_hypergraph(ctx, &hypergraph)?;
            let y = load_vertex_signal(ctx, &signal, h.n_vertices())?;
            let spec = RegularizerSpec::new(reg.into(), alpha)?;
            let (x, info) = denoise(&h, &y, &spec)?;
            ctx.field_str("regularizer", &format!("{reg:?}").to_lowercase());
            ctx.field_float("alpha", alpha);
            ctx.field_float("objective", info.objective);
            ctx.field_int("iterations", info.iterations as i64);
            ctx.field_bool("converged", info.converged);
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &x)?;
            }
            ctx.finish("hg denoise");
            Ok(())
        }
        Cmd::Interpolate { hypergraph, labels, reg, alpha } => {
            let h = load_hypergraph(ctx, &hypergraph)?;
            ctx.track(&labels)?;
            let pairs = io::read_labels_csv(&labels, "vertex")?;
            let spec = RegularizerSpec::new(reg.into(), alpha)?;
            let (x, info) = interpolate_hg(&h, &pairs, &spec)?;
            ctx.field_str("regularizer", &format!("{reg:?}").to_lowercase());
            ctx.field_int("labeled", pairs.len() as i64);
            ctx.field_float("objective", info.objective);
            if let Some(out) = ctx.out.clone() {
                ctx.write_vector(&out, &x)?;
            }
            ctx.finish("hg interpolate");
            Ok(())
        }
    }
}
