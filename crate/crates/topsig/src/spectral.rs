//! Eigenbases, the graph Fourier transform, spectral filters, and eigenmaps.

use ndarray::{Array1, Array2, ArrayView2};

use crate::error::{Error, Result};
use crate::linalg;
use crate::signal::Signal;

/// Full eigenbasis of a symmetric operator: eigenvalues ascending, matching
/// orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralBasis {
    pub eigenvalues: Array1<f64>,
    pub eigenvectors: Array2<f64>,
}

impl SpectralBasis {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvector(&self, k: usize) -> Array1<f64> {
        self.eigenvectors.column(k).to_owned()
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |a, &x| a.max(x.abs()))
    }
}

/// Eigendecomposition of a symmetric matrix (cyclic Jacobi, deterministic).
pub fn sym_eig(m: &ArrayView2<f64>) -> Result<SpectralBasis> {
    let (eigenvalues, eigenvectors) = linalg::jacobi_eigen(m)?;
    Ok(SpectralBasis { eigenvalues, eigenvectors })
}

/// Forward transform: coefficients of `s` in the eigenbasis.
pub fn gft(basis: &SpectralBasis, s: &Signal) -> Result<Array1<f64>> {
    if s.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: s.len() });
    }
    Ok(basis.eigenvectors.t().dot(&s.values))
}

/// Inverse transform back to the simplex domain.
pub fn igft(basis: &SpectralBasis, coefficients: &Array1<f64>, order: usize) -> Result<Signal> {
    if coefficients.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: coefficients.len() });
    }
    Ok(Signal::new(basis.eigenvectors.dot(coefficients), order))
}

/// Apply the filter with frequency response `h`: `U h(Lambda) U^T s`.
pub fn apply_filter(
    basis: &SpectralBasis,
    h: &dyn Fn(f64) -> f64,
    s: &Signal,
) -> Result<Signal> {
    let mut coeffs = gft(basis, s)?;
    for (c, &lambda) in coeffs.iter_mut().zip(basis.eigenvalues.iter()) {
        *c *= h(lambda);
    }
    igft(basis, &coeffs, s.order)
}

/// Rayleigh quotient `s^T M s / s^T s`.
pub fn rayleigh(m: &ArrayView2<f64>, s: &Signal) -> Result<f64> {
    if m.nrows() != s.len() || m.ncols() != s.len() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), got: s.len() });
    }
    let denom = s.values.dot(&s.values);
    if denom == 0.0 {
        return Err(Error::ZeroSignal);
    }
    Ok(s.values.dot(&m.dot(&s.values)) / denom)
}

/// Spectral node coordinates: node `i` maps to the `i`-th entries of the
/// `d` eigenvectors following the trivial one, of the (optionally
/// symmetric-normalized) Laplacian.
pub fn laplacian_eigenmap(
    laplacian: &ArrayView2<f64>,
    d: usize,
    normalized: bool,
) -> Result<Array2<f64>> {
    let n = laplacian.nrows();
    if d >= n {
        return Err(Error::InvalidParameter {
            name: "d",
            reason: format!("need d < {n} nodes, got {d}"),
        });
    }
    let op = if normalized {
        let mut scale = Array1::<f64>::zeros(n);
        for i in 0..n {
            let deg = laplacian[[i, i]];
            scale[i] = if deg > 0.0 { 1.0 / deg.sqrt() } else { 0.0 };
        }
        let mut m = laplacian.to_owned();
        for i in 0..n {
            for j in 0..n {
                m[[i, j]] *= scale[i] * scale[j];
            }
        }
        m
    } else {
        laplacian.to_owned()
    };
    let basis = sym_eig(&op.view())?;
    let mut coords = Array2::<f64>::zeros((n, d));
    for j in 0..d {
        coords.column_mut(j).assign(&basis.eigenvectors.column(j + 1));
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::hodge_laplacian;
    use crate::rng::CounterRng;
    use crate::testing::fig_complex;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn random_signal(rng: &mut CounterRng, n: usize, order: usize) -> Signal {
        Signal::from_vec((0..n).map(|_| rng.uniform_in(-1.0, 1.0)).collect(), order)
    }

    #[test]
    fn sym_eig_hand_computed_pair() {
        let m = array![[1.0, -1.0], [-1.0, 1.0]];
        let basis = sym_eig(&m.view()).unwrap();
        assert_abs_diff_eq!(basis.eigenvalues[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(basis.eigenvalues[1], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn sym_eig_identity() {
        let basis = sym_eig(&Array2::<f64>::eye(3).view()).unwrap();
        for &v in basis.eigenvalues.iter() {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn graph_laplacian_kernel_is_constant() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let basis = sym_eig(&l0.view()).unwrap();
        assert_abs_diff_eq!(basis.eigenvalues[0], 0.0, epsilon = 1e-12);
        let kernel = basis.eigenvector(0);
        let first = kernel[0];
        for &v in kernel.iter() {
            assert_abs_diff_eq!(v, first, epsilon = 1e-10);
        }
    }

    #[test]
    fn gft_of_eigenvector_is_indicator() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let basis = sym_eig(&l0.view()).unwrap();
        let s = Signal::node(basis.eigenvector(3));
        let coeffs = gft(&basis, &s).unwrap();
        for (k, &c) in coeffs.iter().enumerate() {
            let expected = if k == 3 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(c, expected, epsilon = 1e-10);
        }
    }

    #[test]
    fn gft_of_zero_is_zero() {
        let x = fig_complex();
        let basis = sym_eig(&hodge_laplacian(&x, 0).unwrap().view()).unwrap();
        let coeffs = gft(&basis, &Signal::node(Array1::zeros(7))).unwrap();
        assert_eq!(coeffs.iter().filter(|&&c| c != 0.0).count(), 0);
    }

    #[test]
    fn gft_roundtrip_and_parseval() {
        let x = fig_complex();
        let basis = sym_eig(&hodge_laplacian(&x, 0).unwrap().view()).unwrap();
        let mut rng = CounterRng::new(31);
        for _ in 0..20 {
            let s = random_signal(&mut rng, 7, 0);
            let coeffs = gft(&basis, &s).unwrap();
            let back = igft(&basis, &coeffs, 0).unwrap();
            for i in 0..7 {
                assert_abs_diff_eq!(back.values[i], s.values[i], epsilon = 1e-10);
            }
            let norm_sq = coeffs.dot(&coeffs);
            assert_abs_diff_eq!(norm_sq, s.values.dot(&s.values), epsilon = 1e-10);
        }
    }

    #[test]
    fn identity_filter_is_identity() {
        let x = fig_complex();
        let basis = sym_eig(&hodge_laplacian(&x, 0).unwrap().view()).unwrap();
        let mut rng = CounterRng::new(37);
        let s = random_signal(&mut rng, 7, 0);
        let out = apply_filter(&basis, &|_| 1.0, &s).unwrap();
        for i in 0..7 {
            assert_abs_diff_eq!(out.values[i], s.values[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn lowpass_filter_matches_direct_solve() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let basis = sym_eig(&l0.view()).unwrap();
        let alpha = 0.7;
        let mut rng = CounterRng::new(41);
        let s = random_signal(&mut rng, 7, 0);
        let filtered = apply_filter(&basis, &|lambda| 1.0 / (1.0 + alpha * lambda), &s).unwrap();
        // oracle: solve (I + alpha L) y = s directly
        let system = Array2::<f64>::eye(7) + &(alpha * &l0);
        let direct = crate::linalg::solve_spd(&system.view(), &s.values.view()).unwrap();
        for i in 0..7 {
            assert_abs_diff_eq!(filtered.values[i], direct[i], epsilon = 1e-8);
        }
    }

    #[test]
    fn lambda_filter_kills_constant() {
        let x = fig_complex();
        let basis = sym_eig(&hodge_laplacian(&x, 0).unwrap().view()).unwrap();
        let s = Signal::node(Array1::ones(7));
        let out = apply_filter(&basis, &|lambda| lambda, &s).unwrap();
        for &v in out.values.iter() {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn filters_compose_pointwise() {
        let x = fig_complex();
        let basis = sym_eig(&hodge_laplacian(&x, 0).unwrap().view()).unwrap();
        let mut rng = CounterRng::new(43);
        let s = random_signal(&mut rng, 7, 0);
        let h1 = |l: f64| 1.0 / (1.0 + l);
        let h2 = |l: f64| l * l - 0.3;
        let chained = apply_filter(&basis, &h1, &apply_filter(&basis, &h2, &s).unwrap()).unwrap();
        let fused = apply_filter(&basis, &|l| h1(l) * h2(l), &s).unwrap();
        for i in 0..7 {
            assert_abs_diff_eq!(chained.values[i], fused.values[i], epsilon = 1e-8);
        }
    }

    #[test]
    fn rayleigh_of_eigenvector_is_eigenvalue() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let basis = sym_eig(&l0.view()).unwrap();
        for k in 0..basis.len() {
            let s = Signal::node(basis.eigenvector(k));
            let r = rayleigh(&l0.view(), &s).unwrap();
            assert_abs_diff_eq!(r, basis.eigenvalues[k], epsilon = 1e-9);
        }
        // extremes of the quotient over the basis are the extreme eigenvalues
        let rs: Vec<f64> = (0..basis.len())
            .map(|k| rayleigh(&l0.view(), &Signal::node(basis.eigenvector(k))).unwrap())
            .collect();
        let lo = rs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = rs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_abs_diff_eq!(lo, basis.eigenvalues[0], epsilon = 1e-9);
        assert_abs_diff_eq!(hi, basis.eigenvalues[basis.len() - 1], epsilon = 1e-9);
    }

    #[test]
    fn rayleigh_hand_case_and_zero_rejection() {
        let l = array![[1.0, -1.0], [-1.0, 1.0]];
        let s = Signal::node(array![1.0, 0.0]);
        assert_abs_diff_eq!(rayleigh(&l.view(), &s).unwrap(), 1.0, epsilon = 1e-15);
        let zero = Signal::node(array![0.0, 0.0]);
        assert!(matches!(rayleigh(&l.view(), &zero), Err(Error::ZeroSignal)));
    }

    #[test]
    fn rayleigh_of_constant_on_connected_graph_is_zero() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let s = Signal::node(Array1::ones(7));
        assert_abs_diff_eq!(rayleigh(&l0.view(), &s).unwrap(), 0.0, epsilon = 1e-14);
    }

    /// Two 4-cliques joined by one bridge edge: the Fiedler coordinate
    /// separates the cliques by sign. Brute-force check against the full
    /// eigendecomposition.
    #[test]
    fn eigenmap_separates_bridged_cliques() {
        let mut facets = Vec::new();
        for group in [[0usize, 1, 2, 3], [4, 5, 6, 7]] {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    facets.push(vec![group[i], group[j]]);
                }
            }
        }
        facets.push(vec![3, 4]);
        let x = crate::complex::build_complex(&facets, 8).unwrap();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let coords = laplacian_eigenmap(&l0.view(), 1, false).unwrap();
        let left: Vec<f64> = (0..4).map(|i| coords[[i, 0]]).collect();
        let right: Vec<f64> = (4..8).map(|i| coords[[i, 0]]).collect();
        assert!(left.iter().all(|&v| v > 0.0) != right.iter().all(|&v| v > 0.0));
        assert!(left.iter().all(|&v| v * left[0] > 0.0));
        assert!(right.iter().all(|&v| v * right[0] > 0.0));
    }

    #[test]
    fn eigenmap_on_complete_graph_sums_to_zero() {
        let x = crate::complex::build_complex(&[vec![0, 1], vec![0, 2], vec![1, 2]], 3).unwrap();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let coords = laplacian_eigenmap(&l0.view(), 1, false).unwrap();
        let total: f64 = (0..3).map(|i| coords[[i, 0]]).sum();
        assert_abs_diff_eq!(total, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn eigenmap_on_path_is_monotone() {
        let x = crate::complex::build_complex(&[vec![0, 1], vec![1, 2]], 3).unwrap();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let coords = laplacian_eigenmap(&l0.view(), 1, false).unwrap();
        let c: Vec<f64> = (0..3).map(|i| coords[[i, 0]]).collect();
        assert!((c[0] < c[1] && c[1] < c[2]) || (c[0] > c[1] && c[1] > c[2]), "{c:?}");
    }

    #[test]
    fn eigenmap_rejects_too_many_dims() {
        let x = crate::complex::build_complex(&[vec![0, 1], vec![1, 2]], 3).unwrap();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        assert!(laplacian_eigenmap(&l0.view(), 3, false).is_err());
    }
}
