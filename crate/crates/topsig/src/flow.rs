//! Denoising, smoothing, and interpolation of node and edge signals;
//! trajectory flows and their harmonic embeddings.

use ndarray::{Array1, Array2, ArrayView2, s};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hodge::{edge_laplacian, harmonic_basis, hodge_laplacian, line_graph_laplacian};
use crate::linalg;
use crate::signal::Signal;

/// Partial edge observations: (canonical edge index, value) pairs.
#[derive(Debug, Clone)]
pub struct LabeledFlow {
    pairs: Vec<(usize, f64)>,
    n_edges: usize,
}

impl LabeledFlow {
    pub fn new(mut pairs: Vec<(usize, f64)>, n_edges: usize) -> Result<Self> {
        pairs.sort_by_key(|&(i, _)| i);
        for (pos, &(i, _)) in pairs.iter().enumerate() {
            let dup = pos > 0 && pairs[pos - 1].0 == i;
            if i >= n_edges || dup {
                return Err(Error::BadLabel { index: i, len: n_edges });
            }
        }
        Ok(Self { pairs, n_edges })
    }

    pub fn pairs(&self) -> &[(usize, f64)] {
        &self.pairs
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn labeled_indices(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(i, _)| i).collect()
    }

    pub fn unlabeled_indices(&self) -> Vec<usize> {
        let labeled = self.labeled_indices();
        (0..self.n_edges).filter(|i| !labeled.contains(i)).collect()
    }

    /// The feasible extension: labels in place, zeros elsewhere.
    pub fn extension(&self) -> Array1<f64> {
        let mut f0 = Array1::<f64>::zeros(self.n_edges);
        for &(i, v) in &self.pairs {
            f0[i] = v;
        }
        f0
    }
}

/// A walk through the 1-skeleton; consecutive vertices must share an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub vertices: Vec<usize>,
}

impl Trajectory {
    pub fn new(vertices: Vec<usize>) -> Self {
        Self { vertices }
    }

    pub fn hops(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// Which operator regularizes an edge-flow denoise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowOperator {
    Hodge,
    Edge,
    LineGraph,
}

impl FlowOperator {
    pub fn matrix(self, x: &SimplicialComplex) -> Result<Array2<f64>> {
        match self {
            FlowOperator::Hodge => hodge_laplacian(x, 1),
            FlowOperator::Edge => edge_laplacian(x),
            FlowOperator::LineGraph => line_graph_laplacian(x),
        }
    }
}

fn require_positive(alpha: f64, name: &'static str) -> Result<()> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be positive, got {alpha}"),
        });
    }
    Ok(())
}

/// Quadratic smoothing: the minimizer `(I + alpha L)^-1 y`.
pub fn denoise_node(l: &ArrayView2<f64>, y: &Signal, alpha: f64) -> Result<Signal> {
    require_positive(alpha, "alpha")?;
    if l.nrows() != y.len() {
        return Err(Error::DimensionMismatch { expected: l.nrows(), got: y.len() });
    }
    let system = Array2::<f64>::eye(l.nrows()) + &(alpha * &l.to_owned());
    let out = linalg::solve_spd(&system.view(), &y.values.view())?;
    Ok(Signal::new(out, y.order))
}

/// `(I - mu L)^k y`; `mu` must lie in the stable range `(0, 2 / lambda_max)`.
pub fn iterative_smooth(l: &ArrayView2<f64>, y: &Signal, mu: f64, k: usize) -> Result<Signal> {
    if l.nrows() != y.len() {
        return Err(Error::DimensionMismatch { expected: l.nrows(), got: y.len() });
    }
    let lambda_max = linalg::lambda_max(l)?;
    let limit = if lambda_max > 0.0 { 2.0 / lambda_max } else { f64::INFINITY };
    if mu.is_nan() || mu <= 0.0 || mu >= limit {
        return Err(Error::UnstableStep { mu, limit });
    }
    let mut v = y.values.clone();
    for _ in 0..k {
        v = &v - &(mu * &l.dot(&v));
    }
    Ok(Signal::new(v, y.order))
}

/// Edge-flow denoising `(I + alpha Q)^-1 f` with the regularizer `Q` chosen
/// among the Hodge, edge, and line-graph Laplacians.
pub fn denoise_flow(
    x: &SimplicialComplex,
    f: &Signal,
    alpha: f64,
    kind: FlowOperator,
) -> Result<Signal> {
    require_positive(alpha, "alpha")?;
    f.expect(1, x.num_simplices(1))?;
    let q = kind.matrix(x)?;
    let system = Array2::<f64>::eye(q.nrows()) + &(alpha * &q);
    let out = linalg::solve_spd(&system.view(), &f.values.view())?;
    Ok(Signal::edge(out))
}

/// Interpolate unmeasured edge flows by penalized flow conservation.
///
/// The unlabeled entries solve the stacked least-squares system
/// `[B_1 Phi; alpha I]` (plus a `[B_2^T Phi]` block when `use_triangles`)
/// against right-hand sides built from the feasible extension; labeled
/// entries are copied through untouched.
pub fn interpolate_flow(
    x: &SimplicialComplex,
    labels: &LabeledFlow,
    alpha: f64,
    use_triangles: bool,
) -> Result<Signal> {
    require_positive(alpha, "alpha")?;
    let n_edges = x.num_simplices(1);
    if labels.n_edges() != n_edges {
        return Err(Error::DimensionMismatch { expected: n_edges, got: labels.n_edges() });
    }
    let f0 = labels.extension();
    let unlabeled = labels.unlabeled_indices();
    if unlabeled.is_empty() {
        return Ok(Signal::edge(f0));
    }

    let b1 = x.boundary_matrix(1)?.to_dense();
    let g = select_columns(&b1, &unlabeled);
    let mut normal = g.t().dot(&g);
    let mut rhs = -g.t().dot(&b1.dot(&f0));
    if use_triangles && x.top_order() >= 2 {
        let b2t = x.boundary_matrix(2)?.to_dense().t().to_owned();
        let c = select_columns(&b2t, &unlabeled);
        normal = normal + c.t().dot(&c);
        rhs = rhs - c.t().dot(&b2t.dot(&f0));
    }
    for i in 0..normal.nrows() {
        normal[[i, i]] += alpha * alpha;
    }
    let solution = linalg::solve_spd(&normal.view(), &rhs.view())?;

    let mut out = f0;
    for (col, &edge) in unlabeled.iter().enumerate() {
        out[edge] = solution[col];
    }
    Ok(Signal::edge(out))
}

/// Net in-minus-out flow at each node: `B_1 f`.
pub fn divergence(x: &SimplicialComplex, f: &Signal) -> Result<Signal> {
    f.expect(1, x.num_simplices(1))?;
    let b1 = x.boundary_matrix(1)?.to_dense();
    Ok(Signal::node(b1.dot(&f.values)))
}

/// Signed edge indicator of a walk: +1 with the reference orientation, -1
/// against it, accumulated over repeated traversals.
pub fn trajectory_flow(x: &SimplicialComplex, t: &Trajectory) -> Result<Signal> {
    let mut f = Array1::<f64>::zeros(x.num_simplices(1));
    for pair in t.vertices.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let idx = x.edge_index(a, b).ok_or(Error::NotAdjacent(a, b))?;
        f[idx] += if a < b { 1.0 } else { -1.0 };
    }
    Ok(Signal::edge(f))
}

/// Running harmonic embedding of a trajectory.
///
/// Point 0 is the origin; point `k` adds the signed projection of the `k`-th
/// hop onto the harmonic basis. The final point equals the projection of the
/// whole trajectory flow.
pub fn embed_trajectory(x: &SimplicialComplex, t: &Trajectory) -> Result<Vec<Array1<f64>>> {
    let basis = harmonic_basis(x)?;
    let dim = basis.ncols();
    if dim == 0 {
        return Err(Error::EmptyHarmonicSpace);
    }
    let mut points = Vec::with_capacity(t.hops() + 1);
    let mut current = Array1::<f64>::zeros(dim);
    points.push(current.clone());
    for pair in t.vertices.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let idx = x.edge_index(a, b).ok_or(Error::NotAdjacent(a, b))?;
        let sign = if a < b { 1.0 } else { -1.0 };
        let step = basis.row(idx).to_owned() * sign;
        current = &current + &step;
        points.push(current.clone());
    }
    Ok(points)
}

/// Interpolate node labels by the Laplacian quadratic form: unlabeled nodes
/// solve the reduced system `L_UU y_U = -L_UL y_L`.
pub fn interpolate_node(l: &ArrayView2<f64>, labels: &[(usize, f64)]) -> Result<Signal> {
    let n = l.nrows();
    if labels.is_empty() {
        return Err(Error::UnlabeledComponent);
    }
    let mut value = vec![None; n];
    for &(i, v) in labels {
        if i >= n || value[i].is_some() {
            return Err(Error::BadLabel { index: i, len: n });
        }
        value[i] = Some(v);
    }
    let unlabeled: Vec<usize> = (0..n).filter(|&i| value[i].is_none()).collect();
    let mut out = Array1::<f64>::zeros(n);
    for &(i, v) in labels {
        out[i] = v;
    }
    if unlabeled.is_empty() {
        return Ok(Signal::node(out));
    }
    let u = unlabeled.len();
    let mut luu = Array2::<f64>::zeros((u, u));
    let mut rhs = Array1::<f64>::zeros(u);
    for (r, &i) in unlabeled.iter().enumerate() {
        for (c, &j) in unlabeled.iter().enumerate() {
            luu[[r, c]] = l[[i, j]];
        }
        for &(j, v) in labels {
            rhs[r] -= l[[i, j]] * v;
        }
    }
    // a singular reduced system means some component carries no label
    let solution = linalg::solve_spd(&luu.view(), &rhs.view())
        .map_err(|_| Error::UnlabeledComponent)?;
    for (r, &i) in unlabeled.iter().enumerate() {
        out[i] = solution[r];
    }
    Ok(Signal::node(out))
}

fn select_columns(m: &Array2<f64>, cols: &[usize]) -> Array2<f64> {
    let mut out = Array2::<f64>::zeros((m.nrows(), cols.len()));
    for (dst, &src) in cols.iter().enumerate() {
        out.slice_mut(s![.., dst]).assign(&m.column(src));
    }
    out
}
