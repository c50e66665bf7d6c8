//! Forward passes for graph convolutional layers and a three-level
//! simplicial network, plus orientation-equivariance and locality checks.

use std::sync::Arc;

use ndarray::{Array1, Array2, ArrayView2};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hodge::hodge_laplacian;
use crate::signal::Signal;

/// Elementwise activation. Custom activations must be odd when the
/// architecture is expected to be orientation-equivariant; [`Activation::require_odd`]
/// samples a grid to verify that before use.
#[derive(Clone)]
pub enum Activation {
    Identity,
    Tanh,
    Relu,
    OddCustom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for Activation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Activation::Identity => write!(f, "Identity"),
            Activation::Tanh => write!(f, "Tanh"),
            Activation::Relu => write!(f, "Relu"),
            Activation::OddCustom(_) => write!(f, "OddCustom(..)"),
        }
    }
}

impl Activation {
    pub fn apply(&self, x: f64) -> f64 {
        match self {
            Activation::Identity => x,
            Activation::Tanh => x.tanh(),
            Activation::Relu => x.max(0.0),
            Activation::OddCustom(f) => f(x),
        }
    }

    pub fn apply_vec(&self, v: &Array1<f64>) -> Array1<f64> {
        v.mapv(|x| self.apply(x))
    }

    pub fn apply_mat(&self, m: &Array2<f64>) -> Array2<f64> {
        m.mapv(|x| self.apply(x))
    }

    pub fn is_odd_tag(&self) -> bool {
        matches!(self, Activation::Identity | Activation::Tanh)
    }

    /// Sample sigma(-x) + sigma(x) on a grid; reject activations that fail.
    pub fn require_odd(&self) -> Result<()> {
        if self.is_odd_tag() {
            return Ok(());
        }
        for i in 0..=200 {
            let x = -5.0 + 0.05 * i as f64;
            let dev = (self.apply(-x) + self.apply(x)).abs();
            if dev > 1e-12 {
                return Err(Error::NotOdd { deviation: dev, at: x });
            }
        }
        Ok(())
    }
}

/// Per-layer weights of a convolutional stack; layer `k` maps feature width
/// `F_{k-1}` to `F_k`.
#[derive(Debug, Clone)]
pub struct LayerStack {
    pub weights: Vec<Array2<f64>>,
    pub activation: Activation,
}

impl LayerStack {
    pub fn identity(depth: usize, features: usize, activation: Activation) -> Self {
        Self { weights: vec![Array2::eye(features); depth], activation }
    }
}

/// Graph convolution: `Y_k = sigma(H Y_{k-1} W_k)` down the stack.
pub fn gcn_forward(h: &ArrayView2<f64>, y0: &Array2<f64>, stack: &LayerStack) -> Result<Array2<f64>> {
    if h.ncols() != y0.nrows() {
        return Err(Error::DimensionMismatch { expected: h.ncols(), got: y0.nrows() });
    }
    let mut y = y0.clone();
    for w in &stack.weights {
        if w.nrows() != y.ncols() {
            return Err(Error::DimensionMismatch { expected: y.ncols(), got: w.nrows() });
        }
        y = stack.activation.apply_mat(&h.dot(&y).dot(w));
    }
    Ok(y)
}

/// Signals on the three lowest levels of a complex.
#[derive(Debug, Clone)]
pub struct LevelSignals {
    pub nodes: Array1<f64>,
    pub edges: Array1<f64>,
    pub triangles: Array1<f64>,
}

impl LevelSignals {
    pub fn zeros(x: &SimplicialComplex) -> Self {
        Self {
            nodes: Array1::zeros(x.num_simplices(0)),
            edges: Array1::zeros(x.num_simplices(1)),
            triangles: Array1::zeros(x.num_simplices(2)),
        }
    }
}

/// Three-level simplicial forward pass. Each layer computes, from the
/// previous layer's signals,
///
/// ```text
/// v <- sigma(L0 v + B1 f)
/// f <- sigma(L1 f + B2 t + B1^T v)
/// t <- sigma(L2 t + B2^T f)
/// ```
///
/// On complexes without triangles the `B2`/`L2` blocks are absent and the
/// triangle signal stays empty. `level_scales`, when given, multiplies the
/// pre-activation of (nodes, edges, triangles) per layer; the default is the
/// plain weightless recursion.
pub fn snn_forward(
    x: &SimplicialComplex,
    input: &LevelSignals,
    depth: usize,
    activation: &Activation,
    level_scales: Option<&[[f64; 3]]>,
) -> Result<LevelSignals> {
    let n0 = x.num_simplices(0);
    let n1 = x.num_simplices(1);
    let n2 = x.num_simplices(2);
    if input.nodes.len() != n0 {
        return Err(Error::DimensionMismatch { expected: n0, got: input.nodes.len() });
    }
    if input.edges.len() != n1 {
        return Err(Error::DimensionMismatch { expected: n1, got: input.edges.len() });
    }
    if input.triangles.len() != n2 {
        return Err(Error::DimensionMismatch { expected: n2, got: input.triangles.len() });
    }
    if let Some(scales) = level_scales {
        if scales.len() != depth {
            return Err(Error::DimensionMismatch { expected: depth, got: scales.len() });
        }
    }

    let l0 = hodge_laplacian(x, 0)?;
    let b1 = if x.top_order() >= 1 { Some(x.boundary_matrix(1)?.to_dense()) } else { None };
    let l1 = if x.top_order() >= 1 { Some(hodge_laplacian(x, 1)?) } else { None };
    let b2 = if x.top_order() >= 2 { Some(x.boundary_matrix(2)?.to_dense()) } else { None };
    let l2 = if x.top_order() >= 2 { Some(hodge_laplacian(x, 2)?) } else { None };

    let mut v = input.nodes.clone();
    let mut f = input.edges.clone();
    let mut t = input.triangles.clone();
    for layer in 0..depth {
        let [sv, sf, st] = level_scales.map_or([1.0; 3], |s| s[layer]);
        let mut v_next = l0.dot(&v);
        if let Some(b1) = &b1 {
            v_next = v_next + b1.dot(&f);
        }
        let mut f_next = match &l1 {
            Some(l1) => l1.dot(&f),
            None => Array1::zeros(0),
        };
        if let Some(b1) = &b1 {
            f_next = f_next + b1.t().dot(&v);
        }
        if let Some(b2) = &b2 {
            f_next = f_next + b2.dot(&t);
        }
        let t_next = match (&l2, &b2) {
            (Some(l2), Some(b2)) => l2.dot(&t) + b2.t().dot(&f),
            _ => Array1::zeros(0),
        };
        v = activation.apply_vec(&(v_next * sv));
        f = activation.apply_vec(&(f_next * sf));
        t = activation.apply_vec(&(t_next * st));
    }
    Ok(LevelSignals { nodes: v, edges: f, triangles: t })
}

/// Diagonal +-1 orientation change over edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationFlip {
    signs: Vec<i8>,
}

impl OrientationFlip {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParameter {
                name: "signs",
                reason: "entries must be +1 or -1".into(),
            });
        }
        Ok(Self { signs })
    }

    pub fn identity(n: usize) -> Self {
        Self { signs: vec![1; n] }
    }

    pub fn negate_all(n: usize) -> Self {
        Self { signs: vec![-1; n] }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, i: usize) -> f64 {
        f64::from(self.signs[i])
    }

    /// `Theta f`.
    pub fn flip_signal(&self, f: &Signal) -> Result<Signal> {
        if f.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: f.len() });
        }
        let values =
            Array1::from_iter(f.values.iter().enumerate().map(|(i, &v)| v * self.sign(i)));
        Ok(Signal::new(values, f.order))
    }

    /// `Theta M Theta` for an edge-indexed operator.
    pub fn conjugate_operator(&self, m: &ArrayView2<f64>) -> Result<Array2<f64>> {
        if m.nrows() != self.len() || m.ncols() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: m.nrows() });
        }
        let mut out = m.to_owned();
        for i in 0..self.len() {
            for j in 0..self.len() {
                out[[i, j]] *= self.sign(i) * self.sign(j);
            }
        }
        Ok(out)
    }

    /// `Theta B_2`: triangle boundary seen under the new edge orientations.
    pub fn flip_rows(&self, b: &ArrayView2<f64>) -> Result<Array2<f64>> {
        if b.nrows() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: b.nrows() });
        }
        let mut out = b.to_owned();
        for i in 0..self.len() {
            for j in 0..b.ncols() {
                out[[i, j]] *= self.sign(i);
            }
        }
        Ok(out)
    }

    /// `B_1 Theta`: node-to-edge incidence under the new edge orientations.
    pub fn flip_cols(&self, b: &ArrayView2<f64>) -> Result<Array2<f64>> {
        if b.ncols() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: b.ncols() });
        }
        let mut out = b.to_owned();
        for i in 0..b.nrows() {
            for j in 0..self.len() {
                out[[i, j]] *= self.sign(j);
            }
        }
        Ok(out)
    }
}

/// Edge-flow architecture [`flow_arch_forward`] checks equivariance for:
/// `g(f) = sigma(L sigma(L f w_1) w_2 ...)` with scalar layer weights.
#[derive(Debug, Clone)]
pub struct FlowArch {
    pub layer_weights: Vec<f64>,
}

impl FlowArch {
    pub fn plain(depth: usize) -> Self {
        Self { layer_weights: vec![1.0; depth] }
    }
}

pub fn flow_arch_forward(
    arch: &FlowArch,
    operator: &ArrayView2<f64>,
    sigma: &Activation,
    f: &Array1<f64>,
) -> Result<Array1<f64>> {
    if operator.ncols() != f.len() {
        return Err(Error::DimensionMismatch { expected: operator.ncols(), got: f.len() });
    }
    let mut y = f.clone();
    for &w in &arch.layer_weights {
        y = sigma.apply_vec(&(operator.dot(&y) * w));
    }
    Ok(y)
}

/// Max deviation `|g_{Theta L Theta}(Theta f) - Theta g_L(f)|_inf`; zero for
/// orientation-equivariant architectures.
pub fn check_orientation_equivariance(
    arch: &FlowArch,
    operator: &ArrayView2<f64>,
    sigma: &Activation,
    f: &Array1<f64>,
    theta: &OrientationFlip,
) -> Result<f64> {
    let flipped_op = theta.conjugate_operator(operator)?;
    let flipped_f = theta.flip_signal(&Signal::edge(f.clone()))?;
    let lhs = flow_arch_forward(arch, &flipped_op.view(), sigma, &flipped_f.values)?;
    let rhs_plain = flow_arch_forward(arch, operator, sigma, f)?;
    let rhs = theta.flip_signal(&Signal::edge(rhs_plain))?;
    Ok((&lhs - &rhs.values).iter().fold(0.0_f64, |a, x| a.max(x.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;
    use crate::testing::fig_complex;
    use approx::assert_abs_diff_eq;

    fn random_theta(rng: &mut CounterRng, n: usize) -> OrientationFlip {
        OrientationFlip::new(
            (0..n).map(|_| if rng.uniform() < 0.5 { 1 } else { -1 }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn gcn_identity_activation_collapses_to_filter() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let h = Array2::<f64>::eye(7) - &(0.1 * &l0);
        let mut rng = CounterRng::new(83);
        let y0 =
            Array2::from_shape_fn((7, 3), |_| rng.uniform_in(-1.0, 1.0));
        let mut weights = Vec::new();
        for _ in 0..3 {
            weights.push(Array2::from_shape_fn((3, 3), |_| rng.uniform_in(-0.5, 0.5)));
        }
        let stack = LayerStack { weights: weights.clone(), activation: Activation::Identity };
        let out = gcn_forward(&h.view(), &y0, &stack).unwrap();
        // closed form: (H^3 Y0)(W1 W2 W3)
        let h3 = h.dot(&h).dot(&h);
        let w = weights[0].dot(&weights[1]).dot(&weights[2]);
        let expected = h3.dot(&y0).dot(&w);
        for ((i, j), &v) in out.indexed_iter() {
            assert_abs_diff_eq!(v, expected[[i, j]], epsilon = 1e-10);
        }
    }

    #[test]
    fn gcn_identity_weights_recover_iterative_smoothing() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let mu = 0.15;
        let h = Array2::<f64>::eye(7) - &(mu * &l0);
        let mut rng = CounterRng::new(89);
        let y = Array1::from((0..7).map(|_| rng.uniform_in(-1.0, 1.0)).collect::<Vec<_>>());
        let y0 = y.clone().insert_axis(ndarray::Axis(1));
        let stack = LayerStack::identity(4, 1, Activation::Identity);
        let out = gcn_forward(&h.view(), &y0, &stack).unwrap();
        let smoothed = crate::flow::iterative_smooth(
            &l0.view(),
            &Signal::node(y),
            mu,
            4,
        )
        .unwrap();
        for i in 0..7 {
            assert_abs_diff_eq!(out[[i, 0]], smoothed.values[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn gcn_zero_input_stays_zero() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        for activation in [Activation::Identity, Activation::Tanh, Activation::Relu] {
            let stack = LayerStack::identity(2, 2, activation);
            let out = gcn_forward(&l0.view(), &Array2::zeros((7, 2)), &stack).unwrap();
            assert!(out.iter().all(|&v| v == 0.0));
        }
    }

    /// Depth-2 identity forward matches the unrolled closed forms
    /// (with B1 B2 = 0 collapsing the cross terms).
    #[test]
    fn depth_two_identity_closed_forms() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let l1 = hodge_laplacian(&x, 1).unwrap();
        let l2 = hodge_laplacian(&x, 2).unwrap();
        let b1 = x.boundary_matrix(1).unwrap().to_dense();
        let b2 = x.boundary_matrix(2).unwrap().to_dense();
        let mut rng = CounterRng::new(97);
        let input = LevelSignals {
            nodes: Array1::from((0..7).map(|_| rng.uniform_in(-1.0, 1.0)).collect::<Vec<_>>()),
            edges: Array1::from((0..10).map(|_| rng.uniform_in(-1.0, 1.0)).collect::<Vec<_>>()),
            triangles: Array1::from((0..2).map(|_| rng.uniform_in(-1.0, 1.0)).collect::<Vec<_>>()),
        };
        let out = snn_forward(&x, &input, 2, &Activation::Identity, None).unwrap();

        let eye0 = Array2::<f64>::eye(7);
        let eye1 = Array2::<f64>::eye(10);
        let eye2 = Array2::<f64>::eye(2);
        let v2 = l0.dot(&(&l0 + &eye0)).dot(&input.nodes)
            + 2.0 * l0.dot(&b1).dot(&input.edges);
        let f2 = (l1.dot(&b2) + b2.dot(&l2)).dot(&input.triangles)
            + l1.dot(&(&l1 + &eye1)).dot(&input.edges)
            + (l1.dot(&b1.t()) + b1.t().dot(&l0)).dot(&input.nodes);
        let t2 = l2.dot(&(&l2 + &eye2)).dot(&input.triangles)
            + (l2.dot(&b2.t()) + b2.t().dot(&l1)).dot(&input.edges);

        for i in 0..7 {
            assert_abs_diff_eq!(out.nodes[i], v2[i], epsilon = 1e-10);
        }
        for i in 0..10 {
            assert_abs_diff_eq!(out.edges[i], f2[i], epsilon = 1e-10);
        }
        for i in 0..2 {
            assert_abs_diff_eq!(out.triangles[i], t2[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn zero_inputs_stay_zero_for_odd_activations() {
        let x = fig_complex();
        let input = LevelSignals::zeros(&x);
        for activation in [Activation::Identity, Activation::Tanh] {
            let out = snn_forward(&x, &input, 3, &activation, None).unwrap();
            assert!(out.nodes.iter().all(|&v| v == 0.0));
            assert!(out.edges.iter().all(|&v| v == 0.0));
            assert!(out.triangles.iter().all(|&v| v == 0.0));
        }
    }

    /// With identity activation the triangle input cannot reach the nodes
    /// (B1 B2 = 0); with tanh interleaved it can. The nonlinear leak needs
    /// triangles sharing an edge: when every edge belongs to at most one
    /// triangle, an odd activation rescales each triangle circulation as a
    /// whole and the divergence stays exactly zero at any depth.
    #[test]
    fn locality_is_extended_by_nonlinearity() {
        let x = fig_complex();
        let mut input = LevelSignals::zeros(&x);
        input.triangles = ndarray::array![1.0, -2.0];
        let linear = snn_forward(&x, &input, 2, &Activation::Identity, None).unwrap();
        assert!(linear.nodes.iter().all(|&v| v.abs() < 1e-12), "{:?}", linear.nodes);
        // disjoint triangles: tanh cannot leak either
        let nonlinear = snn_forward(&x, &input, 2, &Activation::Tanh, None).unwrap();
        assert!(nonlinear.nodes.iter().all(|&v| v.abs() < 1e-12));

        let shared = crate::complex::build_complex(&[vec![0, 1, 2], vec![1, 2, 3]], 4).unwrap();
        let mut input = LevelSignals::zeros(&shared);
        input.triangles = ndarray::array![1.0, -2.0];
        let linear = snn_forward(&shared, &input, 2, &Activation::Identity, None).unwrap();
        assert!(linear.nodes.iter().all(|&v| v.abs() < 1e-12), "{:?}", linear.nodes);
        let nonlinear = snn_forward(&shared, &input, 2, &Activation::Tanh, None).unwrap();
        let reach = nonlinear.nodes.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
        assert!(reach > 1e-6, "tanh should leak triangle data to nodes, got {reach}");
    }

    #[test]
    fn permutation_equivariance_of_forward_pass() {
        let x = fig_complex();
        let mut rng = CounterRng::new(101);
        let input = LevelSignals {
            nodes: Array1::from((0..7).map(|_| rng.uniform_in(-1.0, 1.0)).collect::<Vec<_>>()),
            edges: Array1::from((0..10).map(|_| rng.uniform_in(-1.0, 1.0)).collect::<Vec<_>>()),
            triangles: Array1::from((0..2).map(|_| rng.uniform_in(-1.0, 1.0)).collect::<Vec<_>>()),
        };
        // relabel vertices by a permutation and rebuild
        let perm: Vec<usize> = vec![3, 0, 5, 1, 6, 2, 4];
        let facets: Vec<Vec<usize>> =
            x.facets().iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        let xp = crate::complex::build_complex(&facets, 7).unwrap();
        // push the signals through the induced simplex relabelings
        let mut nodes_p = Array1::<f64>::zeros(7);
        for (i, s) in x.simplices(0).iter().enumerate() {
            let target = xp.index_of(0, &[perm[s[0]]]).unwrap();
            nodes_p[target] = input.nodes[i];
        }
        let mut edges_p = Array1::<f64>::zeros(10);
        let mut edge_sign = [1.0; 10];
        for (i, s) in x.simplices(1).iter().enumerate() {
            let (a, b) = (perm[s[0]], perm[s[1]]);
            let target = xp.index_of(1, &[a.min(b), a.max(b)]).unwrap();
            // orientation flips when the permutation reverses the pair
            edge_sign[target] = if a < b { 1.0 } else { -1.0 };
            edges_p[target] = input.edges[i] * edge_sign[target];
        }
        let mut tris_p = Array1::<f64>::zeros(2);
        let mut tri_sign = [1.0; 2];
        for (i, s) in x.simplices(2).iter().enumerate() {
            let mut mapped = [perm[s[0]], perm[s[1]], perm[s[2]]];
            let sign = permutation_parity(&mut mapped);
            let target = xp.index_of(2, &mapped).unwrap();
            tri_sign[target] = sign;
            tris_p[target] = input.triangles[i] * sign;
        }
        let out = snn_forward(&x, &input, 2, &Activation::Tanh, None).unwrap();
        let out_p = snn_forward(
            &xp,
            &LevelSignals { nodes: nodes_p, edges: edges_p, triangles: tris_p },
            2,
            &Activation::Tanh,
            None,
        )
        .unwrap();
        for (i, s) in x.simplices(0).iter().enumerate() {
            let target = xp.index_of(0, &[perm[s[0]]]).unwrap();
            assert_abs_diff_eq!(out.nodes[i], out_p.nodes[target], epsilon = 1e-12);
        }
        for (i, s) in x.simplices(1).iter().enumerate() {
            let (a, b) = (perm[s[0]], perm[s[1]]);
            let target = xp.index_of(1, &[a.min(b), a.max(b)]).unwrap();
            assert_abs_diff_eq!(
                out.edges[i] * edge_sign[target],
                out_p.edges[target],
                epsilon = 1e-12
            );
        }
    }

    fn permutation_parity(v: &mut [usize; 3]) -> f64 {
        let mut sign = 1.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if v[i] > v[j] {
                    v.swap(i, j);
                    sign = -sign;
                }
            }
        }
        sign
    }

    #[test]
    fn orientation_flip_objects() {
        let x = fig_complex();
        let l1 = hodge_laplacian(&x, 1).unwrap();
        let f = Signal::edge(Array1::from((0..10).map(|i| i as f64 - 4.0).collect::<Vec<_>>()));
        let id = OrientationFlip::identity(10);
        assert_eq!(id.flip_signal(&f).unwrap().values, f.values);
        assert_eq!(id.conjugate_operator(&l1.view()).unwrap(), l1);

        let neg = OrientationFlip::negate_all(10);
        let nf = neg.flip_signal(&f).unwrap();
        for i in 0..10 {
            assert_eq!(nf.values[i], -f.values[i]);
        }
        assert_eq!(neg.conjugate_operator(&l1.view()).unwrap(), l1);

        // single-edge flip conjugates the off-diagonal row/column
        let mut signs = vec![1i8; 10];
        signs[4] = -1;
        let theta = OrientationFlip::new(signs).unwrap();
        let conj = theta.conjugate_operator(&l1.view()).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let expected = if (i == 4) ^ (j == 4) { -l1[[i, j]] } else { l1[[i, j]] };
                assert_eq!(conj[[i, j]], expected);
            }
        }
    }

    #[test]
    fn tanh_architecture_is_orientation_equivariant() {
        let x = fig_complex();
        let l1 = hodge_laplacian(&x, 1).unwrap();
        let arch = FlowArch { layer_weights: vec![0.7, -0.3] };
        let mut rng = CounterRng::new(103);
        for _ in 0..100 {
            let theta = random_theta(&mut rng, 10);
            let f = Array1::from((0..10).map(|_| rng.uniform_in(-2.0, 2.0)).collect::<Vec<_>>());
            let dev =
                check_orientation_equivariance(&arch, &l1.view(), &Activation::Tanh, &f, &theta)
                    .unwrap();
            assert!(dev <= 1e-10, "tanh deviation {dev}");
        }
    }

    #[test]
    fn relu_breaks_orientation_equivariance() {
        let x = fig_complex();
        let l1 = hodge_laplacian(&x, 1).unwrap();
        let arch = FlowArch::plain(2);
        let mut rng = CounterRng::new(107);
        let mut worst = 0.0_f64;
        for _ in 0..50 {
            let theta = random_theta(&mut rng, 10);
            let f = Array1::from((0..10).map(|_| rng.uniform_in(-2.0, 2.0)).collect::<Vec<_>>());
            let dev =
                check_orientation_equivariance(&arch, &l1.view(), &Activation::Relu, &f, &theta)
                    .unwrap();
            worst = worst.max(dev);
        }
        assert!(worst > 1e-3, "expected a relu counterexample, worst deviation {worst}");
    }

    #[test]
    fn identity_theta_gives_zero_deviation_for_any_activation() {
        let x = fig_complex();
        let l1 = hodge_laplacian(&x, 1).unwrap();
        let arch = FlowArch::plain(2);
        let theta = OrientationFlip::identity(10);
        let f = Array1::from((0..10).map(|i| (i as f64).sin()).collect::<Vec<_>>());
        for sigma in [Activation::Identity, Activation::Tanh, Activation::Relu] {
            let dev =
                check_orientation_equivariance(&arch, &l1.view(), &sigma, &f, &theta).unwrap();
            assert_abs_diff_eq!(dev, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn forward_without_triangles_zeroes_those_blocks() {
        let x = crate::complex::build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]], 3).unwrap();
        let mut input = LevelSignals::zeros(&x);
        assert_eq!(input.triangles.len(), 0);
        input.edges = ndarray::array![1.0, -1.0, 0.5];
        let out = snn_forward(&x, &input, 2, &Activation::Tanh, None).unwrap();
        assert_eq!(out.triangles.len(), 0);
        assert!(out.edges.iter().any(|&v| v != 0.0));
    }

    #[test]
    fn odd_custom_activation_is_verified() {
        let cube = Activation::OddCustom(Arc::new(|x| x * x * x));
        assert!(cube.require_odd().is_ok());
        assert!(Activation::Relu.require_odd().is_err());
    }
}
