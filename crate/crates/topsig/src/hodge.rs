//! Hodge Laplacians, the Hodge decomposition of edge flows, and the
//! gradient / curl / harmonic structure of the edge spectrum.

use ndarray::{Array1, Array2};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg;
use crate::signal::Signal;
use crate::spectral::{sym_eig, SpectralBasis};

/// Relative eigenvalue threshold below which a mode counts as part of the
/// kernel when splitting a spectrum into components.
pub const KERNEL_REL_TOL: f64 = 1e-9;

/// Orthogonal split of an edge flow into gradient, curl, and harmonic parts,
/// with the potentials that generate the first two.
#[derive(Debug, Clone)]
pub struct HodgeDecomposition {
    pub gradient: Signal,
    pub curl: Signal,
    pub harmonic: Signal,
    pub node_potentials: Array1<f64>,
    pub triangle_potentials: Array1<f64>,
}

/// Which subspace an eigenvector of the edge Laplacian spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralComponent {
    Gradient,
    Curl,
    Harmonic,
}

/// Eigenbasis of the Hodge 1-Laplacian with a subspace tag per eigenvector.
#[derive(Debug, Clone)]
pub struct LabeledBasis {
    pub basis: SpectralBasis,
    pub labels: Vec<SpectralComponent>,
}

/// `L_k = B_k^T B_k + B_{k+1} B_{k+1}^T`, with the absent boundary operators
/// at the ends of the chain treated as zero.
pub fn hodge_laplacian(x: &SimplicialComplex, k: usize) -> Result<Array2<f64>> {
    let top = x.top_order();
    if k > top {
        return Err(Error::OrderOutOfRange { k, top });
    }
    let n = x.num_simplices(k);
    let mut l = Array2::<f64>::zeros((n, n));
    if k >= 1 {
        let bk = x.boundary_matrix(k)?.to_dense();
        l = l + bk.t().dot(&bk);
    }
    if k < top {
        let bk1 = x.boundary_matrix(k + 1)?.to_dense();
        l = l + bk1.dot(&bk1.t());
    }
    Ok(l)
}

/// `B_1^T B_1`: the Hodge 1-Laplacian of the skeleton with all triangles
/// ignored. Its kernel is the cycle space.
pub fn edge_laplacian(x: &SimplicialComplex) -> Result<Array2<f64>> {
    if x.top_order() < 1 {
        return Err(Error::OrderOutOfRange { k: 1, top: x.top_order() });
    }
    let b1 = x.boundary_matrix(1)?.to_dense();
    Ok(b1.t().dot(&b1))
}

/// Combinatorial Laplacian of the (unweighted) line graph of the skeleton:
/// edges become nodes, joined when they share an endpoint.
pub fn line_graph_laplacian(x: &SimplicialComplex) -> Result<Array2<f64>> {
    if x.top_order() < 1 {
        return Err(Error::OrderOutOfRange { k: 1, top: x.top_order() });
    }
    let edges = x.simplices(1);
    let m = edges.len();
    let mut l = Array2::<f64>::zeros((m, m));
    for i in 0..m {
        for j in (i + 1)..m {
            let shares = edges[i].iter().any(|v| edges[j].contains(v));
            if shares {
                l[[i, j]] = -1.0;
                l[[j, i]] = -1.0;
                l[[i, i]] += 1.0;
                l[[j, j]] += 1.0;
            }
        }
    }
    Ok(l)
}

/// Hodge-decompose an edge flow.
///
/// Node potentials solve `min |B_1^T p - f|` and triangle potentials solve
/// `min |B_2 w - f|`, both as minimum-norm least-squares problems; the
/// harmonic part is the remainder.
pub fn hodge_decompose(x: &SimplicialComplex, f: &Signal) -> Result<HodgeDecomposition> {
    let n_edges = x.num_simplices(1);
    f.expect(1, n_edges)?;
    let b1 = x.boundary_matrix(1)?.to_dense();
    let node_potentials = linalg::lstsq_min_norm(&b1.t(), &f.values.view())?;
    let gradient = b1.t().dot(&node_potentials);

    let (triangle_potentials, curl) = if x.top_order() >= 2 {
        let b2 = x.boundary_matrix(2)?.to_dense();
        let w = linalg::lstsq_min_norm(&b2.view(), &f.values.view())?;
        let r = b2.dot(&w);
        (w, r)
    } else {
        (Array1::zeros(0), Array1::zeros(n_edges))
    };

    let harmonic = &f.values - &gradient - &curl;
    Ok(HodgeDecomposition {
        gradient: Signal::edge(gradient),
        curl: Signal::edge(curl),
        harmonic: Signal::edge(harmonic),
        node_potentials,
        triangle_potentials,
    })
}

/// Orthonormal basis of `ker(L_1)`, computed as the common null space of
/// `B_1` and `B_2^T` (divergence-free and curl-free). Columns span the
/// harmonic space; the count is the number of independent 1-cycles not
/// filled by triangles.
pub fn harmonic_basis(x: &SimplicialComplex) -> Result<Array2<f64>> {
    if x.top_order() < 1 {
        return Err(Error::OrderOutOfRange { k: 1, top: x.top_order() });
    }
    let b1 = x.boundary_matrix(1)?.to_dense();
    let n_edges = x.num_simplices(1);
    let n_tris = x.num_simplices(2);
    let mut stacked = Array2::<f64>::zeros((b1.nrows() + n_tris, n_edges));
    stacked.slice_mut(ndarray::s![..b1.nrows(), ..]).assign(&b1);
    if n_tris > 0 {
        let b2 = x.boundary_matrix(2)?.to_dense();
        stacked.slice_mut(ndarray::s![b1.nrows().., ..]).assign(&b2.t());
    }
    Ok(linalg::nullspace(&stacked.view()))
}

/// Eigenbasis of `L_1` with every eigenvector tagged gradient, curl, or
/// harmonic.
///
/// Nonzero eigenpairs of `L_0` lift through `B_1^T` to gradient eigenvectors
/// with the same eigenvalue; nonzero eigenpairs of the triangle coupling
/// matrix `B_2^T B_2` lift through `B_2` to curl eigenvectors; the kernel is
/// tagged harmonic. The tags partition the basis.
pub fn spectral_components(x: &SimplicialComplex) -> Result<LabeledBasis> {
    if x.top_order() < 1 {
        return Err(Error::OrderOutOfRange { k: 1, top: x.top_order() });
    }
    let n_edges = x.num_simplices(1);
    let b1 = x.boundary_matrix(1)?.to_dense();

    let mut pairs: Vec<(f64, Array1<f64>, SpectralComponent)> = Vec::new();

    let l0 = b1.dot(&b1.t());
    let node_basis = sym_eig(&l0.view())?;
    let node_cut = KERNEL_REL_TOL * node_basis.lambda_max().max(f64::MIN_POSITIVE);
    for k in 0..node_basis.len() {
        let lambda = node_basis.eigenvalues[k];
        if lambda > node_cut {
            let mut lifted = b1.t().dot(&node_basis.eigenvector(k));
            let norm = lifted.dot(&lifted).sqrt();
            lifted.mapv_inplace(|v| v / norm);
            linalg::fix_sign(&mut lifted);
            pairs.push((lambda, lifted, SpectralComponent::Gradient));
        }
    }

    if x.top_order() >= 2 {
        let b2 = x.boundary_matrix(2)?.to_dense();
        let coupling = b2.t().dot(&b2);
        let tri_basis = sym_eig(&coupling.view())?;
        let tri_cut = KERNEL_REL_TOL * tri_basis.lambda_max().max(f64::MIN_POSITIVE);
        for k in 0..tri_basis.len() {
            let theta = tri_basis.eigenvalues[k];
            if theta > tri_cut {
                let mut lifted = b2.dot(&tri_basis.eigenvector(k));
                let norm = lifted.dot(&lifted).sqrt();
                lifted.mapv_inplace(|v| v / norm);
                linalg::fix_sign(&mut lifted);
                pairs.push((theta, lifted, SpectralComponent::Curl));
            }
        }
    }

    let harm = harmonic_basis(x)?;
    for col in harm.columns() {
        let mut v = col.to_owned();
        linalg::fix_sign(&mut v);
        pairs.push((0.0, v, SpectralComponent::Harmonic));
    }

    if pairs.len() != n_edges {
        return Err(Error::NonConvergence {
            iterations: 0,
            residual: (pairs.len() as f64 - n_edges as f64).abs(),
        });
    }

    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut eigenvalues = Array1::<f64>::zeros(n_edges);
    let mut eigenvectors = Array2::<f64>::zeros((n_edges, n_edges));
    let mut labels = Vec::with_capacity(n_edges);
    for (i, (lambda, vector, label)) in pairs.into_iter().enumerate() {
        eigenvalues[i] = lambda;
        eigenvectors.column_mut(i).assign(&vector);
        labels.push(label);
    }
    Ok(LabeledBasis { basis: SpectralBasis { eigenvalues, eigenvectors }, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::rng::CounterRng;
    use crate::testing::{fig_complex, fig_flow, random_complex, rank_oracle};
    use approx::assert_abs_diff_eq;

    #[test]
    fn l0_equals_degree_minus_adjacency() {
        let x = fig_complex();
        let l0 = hodge_laplacian(&x, 0).unwrap();
        let mut expected = Array2::<f64>::zeros((7, 7));
        for e in x.simplices(1) {
            expected[[e[0], e[0]]] += 1.0;
            expected[[e[1], e[1]]] += 1.0;
            expected[[e[0], e[1]]] -= 1.0;
            expected[[e[1], e[0]]] -= 1.0;
        }
        assert_eq!(l0, expected);
    }

    #[test]
    fn l1_kernel_dimension_from_rank_oracle() {
        let x = fig_complex();
        let l1 = hodge_laplacian(&x, 1).unwrap();
        assert_eq!(l1.nrows(), 10);
        let rank_b1 = rank_oracle(&x.boundary_matrix(1).unwrap().to_dense_i64());
        let rank_b2 = rank_oracle(&x.boundary_matrix(2).unwrap().to_dense_i64());
        let expected_kernel = 10 - rank_b1 - rank_b2;
        assert_eq!(expected_kernel, 2);
        assert_eq!(harmonic_basis(&x).unwrap().ncols(), expected_kernel);
        // PSD check
        let basis = sym_eig(&l1.view()).unwrap();
        assert!(basis.eigenvalues.iter().all(|&v| v >= -1e-10));
    }

    #[test]
    fn single_triangle_l1_has_trivial_kernel() {
        let x = build_complex(&[vec![0, 1, 2]], 3).unwrap();
        let l1 = hodge_laplacian(&x, 1).unwrap();
        // hand computation: B1^T B1 + B2 B2^T on three edges
        let b1 = x.boundary_matrix(1).unwrap().to_dense();
        let b2 = x.boundary_matrix(2).unwrap().to_dense();
        let expected = b1.t().dot(&b1) + b2.dot(&b2.t());
        assert_eq!(l1, expected);
        assert_eq!(harmonic_basis(&x).unwrap().ncols(), 0);
    }

    #[test]
    fn edge_laplacian_kernel_is_cycle_space() {
        // empty triangle: one independent cycle
        let tri = build_complex(&[vec![0, 1], vec![0, 2], vec![1, 2]], 3).unwrap();
        let le = edge_laplacian(&tri).unwrap();
        let null = linalg::nullspace(&le.view());
        assert_eq!(null.ncols(), 1);

        // tree: no cycles
        let tree = build_complex(&[vec![0, 1], vec![1, 2], vec![1, 3]], 4).unwrap();
        assert_eq!(linalg::nullspace(&edge_laplacian(&tree).unwrap().view()).ncols(), 0);

        // running example skeleton: E - N + components = 10 - 7 + 1 = 4
        let x = fig_complex();
        assert_eq!(linalg::nullspace(&edge_laplacian(&x).unwrap().view()).ncols(), 4);
    }

    #[test]
    fn line_graph_of_path_and_star() {
        let path = build_complex(&[vec![0, 1], vec![1, 2]], 3).unwrap();
        let l = line_graph_laplacian(&path).unwrap();
        assert_eq!(l, ndarray::array![[1.0, -1.0], [-1.0, 1.0]]);

        // star K_{1,3}: line graph is the triangle K_3
        let star = build_complex(&[vec![0, 1], vec![0, 2], vec![0, 3]], 4).unwrap();
        let l = line_graph_laplacian(&star).unwrap();
        for i in 0..3 {
            assert_eq!(l[[i, i]], 2.0);
            for j in 0..3 {
                if i != j {
                    assert_eq!(l[[i, j]], -1.0);
                }
            }
        }
    }

    #[test]
    fn line_graph_rows_sum_to_zero() {
        let x = fig_complex();
        let l = line_graph_laplacian(&x).unwrap();
        assert_eq!(l.nrows(), 10);
        for row in l.rows() {
            assert_abs_diff_eq!(row.sum(), 0.0, epsilon = 1e-12);
        }
    }

    /// The worked decomposition: triangle potentials are (-1, -5/3), i.e.
    /// local circulations of magnitude 1 and 5/3.
    #[test]
    fn decomposition_of_figure_flow() {
        let x = fig_complex();
        let f = Signal::from_vec(fig_flow(), 1);
        let d = hodge_decompose(&x, &f).unwrap();
        assert_abs_diff_eq!(d.triangle_potentials[0], -1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(d.triangle_potentials[1], -5.0 / 3.0, epsilon = 1e-10);
        // orthogonality and reconstruction
        assert_abs_diff_eq!(d.gradient.values.dot(&d.curl.values), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(d.gradient.values.dot(&d.harmonic.values), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(d.curl.values.dot(&d.harmonic.values), 0.0, epsilon = 1e-10);
        let recon = &d.gradient.values + &d.curl.values + &d.harmonic.values;
        for i in 0..10 {
            assert_abs_diff_eq!(recon[i], f.values[i], epsilon = 1e-10);
        }
        // harmonic part is in the kernel of L1
        let l1 = hodge_laplacian(&x, 1).unwrap();
        let residual = l1.dot(&d.harmonic.values);
        assert!(residual.iter().all(|&v| v.abs() < 1e-8));
    }

    #[test]
    fn pure_gradient_input_decomposes_cleanly() {
        let x = fig_complex();
        let b1 = x.boundary_matrix(1).unwrap().to_dense();
        let mut p = Array1::<f64>::zeros(7);
        p[0] = 1.0;
        let f = Signal::edge(b1.t().dot(&p));
        let d = hodge_decompose(&x, &f).unwrap();
        assert!(d.curl.values.iter().all(|&v| v.abs() < 1e-10));
        assert!(d.harmonic.values.iter().all(|&v| v.abs() < 1e-10));
        for i in 0..10 {
            assert_abs_diff_eq!(d.gradient.values[i], f.values[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn random_flows_decompose_orthogonally() {
        let mut rng = CounterRng::new(51);
        let mut tried = 0;
        while tried < 5 {
            let x = random_complex(&mut rng, 9, 0.5, 0.5);
            if x.top_order() < 2 || x.num_simplices(1) < 5 {
                continue;
            }
            tried += 1;
            let m = x.num_simplices(1);
            let f = Signal::from_vec((0..m).map(|_| rng.uniform_in(-2.0, 2.0)).collect(), 1);
            let d = hodge_decompose(&x, &f).unwrap();
            assert_abs_diff_eq!(d.gradient.values.dot(&d.curl.values), 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(d.gradient.values.dot(&d.harmonic.values), 0.0, epsilon = 1e-9);
            assert_abs_diff_eq!(d.curl.values.dot(&d.harmonic.values), 0.0, epsilon = 1e-9);
            let recon = &d.gradient.values + &d.curl.values + &d.harmonic.values;
            for i in 0..m {
                assert_abs_diff_eq!(recon[i], f.values[i], epsilon = 1e-9);
            }
            // components live where they should
            let b1 = x.boundary_matrix(1).unwrap().to_dense();
            let g_from_p = b1.t().dot(&d.node_potentials);
            for i in 0..m {
                assert_abs_diff_eq!(d.gradient.values[i], g_from_p[i], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn component_counts_on_figure() {
        let x = fig_complex();
        let labeled = spectral_components(&x).unwrap();
        let count = |c: SpectralComponent| labeled.labels.iter().filter(|&&l| l == c).count();
        assert_eq!(count(SpectralComponent::Gradient), 6);
        assert_eq!(count(SpectralComponent::Curl), 2);
        assert_eq!(count(SpectralComponent::Harmonic), 2);
    }

    #[test]
    fn no_triangles_means_no_curl() {
        let x = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2], vec![2, 3]], 4).unwrap();
        let labeled = spectral_components(&x).unwrap();
        assert!(labeled.labels.iter().all(|&l| l != SpectralComponent::Curl));
    }

    #[test]
    fn filled_triangle_has_one_curl_mode_at_three() {
        let x = build_complex(&[vec![0, 1, 2]], 3).unwrap();
        let labeled = spectral_components(&x).unwrap();
        let curls: Vec<usize> = labeled
            .labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == SpectralComponent::Curl)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(curls.len(), 1);
        assert_abs_diff_eq!(labeled.basis.eigenvalues[curls[0]], 3.0, epsilon = 1e-10);
    }

    /// Lifted eigenvectors satisfy the eigen-equation of L_1.
    #[test]
    fn lifting_preserves_eigenpairs() {
        let mut rng = CounterRng::new(53);
        let mut tried = 0;
        while tried < 8 {
            let x = random_complex(&mut rng, 8, 0.5, 0.5);
            if x.top_order() < 1 || x.num_simplices(1) < 3 {
                continue;
            }
            tried += 1;
            let l1 = hodge_laplacian(&x, 1).unwrap();
            let labeled = spectral_components(&x).unwrap();
            for k in 0..labeled.basis.len() {
                let v = labeled.basis.eigenvector(k);
                let lambda = labeled.basis.eigenvalues[k];
                let residual = l1.dot(&v) - lambda * &v;
                let norm = residual.dot(&residual).sqrt();
                assert!(norm <= 1e-8, "eigen-residual {norm} at mode {k}");
            }
            // the labeled basis is orthonormal
            let u = &labeled.basis.eigenvectors;
            let gram = u.t().dot(u);
            let dev = (&gram - &Array2::<f64>::eye(u.ncols()))
                .iter()
                .fold(0.0_f64, |a, x| a.max(x.abs()));
            assert!(dev < 1e-8, "orthonormality deviation {dev}");
        }
    }

    #[test]
    fn harmonic_basis_degenerate_cases() {
        let filled = build_complex(&[vec![0, 1, 2]], 3).unwrap();
        assert_eq!(harmonic_basis(&filled).unwrap().ncols(), 0);
        let empty_tri = build_complex(&[vec![0, 1], vec![0, 2], vec![1, 2]], 3).unwrap();
        assert_eq!(harmonic_basis(&empty_tri).unwrap().ncols(), 1);
    }
}
