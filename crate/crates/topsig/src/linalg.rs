//! Dense linear algebra kernels.
//!
//! Everything here is deterministic and self-contained: a cyclic Jacobi
//! eigensolver for symmetric matrices, Cholesky for positive definite solves,
//! an eigendecomposition-based pseudoinverse for rank-deficient least squares,
//! and an elimination-based null space. Target scale is dense matrices up to
//! a couple thousand rows, which covers every construction in this crate.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};

/// Relative cutoff below which an eigenvalue of a Gram matrix is treated as
/// zero when forming pseudoinverses and kernels. The Jacobi noise floor on a
/// normal matrix sits near 1e-15 * lambda_max, so the cutoff leaves two
/// orders of headroom.
pub const PSEUDO_RANK_CUTOFF: f64 = 1e-12;

pub fn max_abs(m: &ArrayView2<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Largest |a_ij - a_ji|.
pub fn asymmetry(m: &ArrayView2<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[[i, j]] - m[[j, i]]).abs());
        }
    }
    worst
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues ascending with matching orthonormal eigenvector
/// columns. The sweep order is fixed (row-major over the upper triangle), so
/// the result is deterministic for a given input. Each eigenvector is
/// normalized so its entry of largest magnitude is positive (ties broken by
/// lowest index).
pub fn jacobi_eigen(m: &ArrayView2<f64>) -> Result<(Array1<f64>, Array2<f64>)> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::NotSquare { rows: n, cols: m.ncols() });
    }
    if n == 0 {
        return Ok((Array1::zeros(0), Array2::zeros((0, 0))));
    }
    let scale = max_abs(&m.view()).max(1.0);
    let asym = asymmetry(&m.view());
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }

    let mut a = m.to_owned();
    let mut v = Array2::<f64>::eye(n);
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let tol = 1e-14 * frob;
    const MAX_SWEEPS: usize = 60;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[[p, q] ] * a[[p, q]];
            }
        }
        if off.sqrt() <= tol {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                if apq.abs() <= tol / (n as f64) {
                    continue;
                }
                let app = a[[p, p]];
                let aqq = a[[q, q]];
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[[p, p]] = app - t * apq;
                a[[q, q]] = aqq + t * apq;
                a[[p, q]] = 0.0;
                a[[q, p]] = 0.0;
                for j in 0..n {
                    if j != p && j != q {
                        let ajp = a[[j, p]];
                        let ajq = a[[j, q]];
                        a[[j, p]] = ajp - s * (ajq + tau * ajp);
                        a[[j, q]] = ajq + s * (ajp - tau * ajq);
                        a[[p, j]] = a[[j, p]];
                        a[[q, j]] = a[[j, q]];
                    }
                }
                for j in 0..n {
                    let vjp = v[[j, p]];
                    let vjq = v[[j, q]];
                    v[[j, p]] = vjp - s * (vjq + tau * vjp);
                    v[[j, q]] = vjq + s * (vjp - tau * vjq);
                }
            }
        }
    }
    if !converged {
        // one final check: the last sweep may have finished the job
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[[p, q]] * a[[p, q]];
            }
        }
        if off.sqrt() > tol {
            return Err(Error::EigNonConvergence { sweeps: MAX_SWEEPS });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[[i, i]].partial_cmp(&a[[j, j]]).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j))
    });
    let mut values = Array1::<f64>::zeros(n);
    let mut vectors = Array2::<f64>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        values[dst] = a[[src, src]];
        let mut col = v.column(src).to_owned();
        fix_sign(&mut col);
        vectors.column_mut(dst).assign(&col);
    }
    Ok((values, vectors))
}

/// Flip a vector so its largest-magnitude entry is positive (ties: lowest index).
pub fn fix_sign(v: &mut Array1<f64>) {
    let mut idx = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        v.mapv_inplace(|x| -x);
    }
}

/// Cholesky solve for a symmetric positive definite system.
pub fn solve_spd(a: &ArrayView2<f64>, b: &ArrayView1<f64>) -> Result<Array1<f64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::NotSquare { rows: n, cols: a.ncols() });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    let mut l = a.to_owned();
    let scale = max_abs(&a.view()).max(f64::MIN_POSITIVE);
    for j in 0..n {
        for k in 0..j {
            let ljk = l[[j, k]];
            for i in j..n {
                l[[i, j]] -= l[[i, k]] * ljk;
            }
        }
        let d = l[[j, j]];
        if d <= 1e-13 * scale {
            return Err(Error::SingularSystem);
        }
        let root = d.sqrt();
        for i in j..n {
            l[[i, j]] /= root;
        }
    }
    // forward then back substitution
    let mut y = b.to_owned();
    for i in 0..n {
        for k in 0..i {
            let v = y[k];
            y[i] -= l[[i, k]] * v;
        }
        y[i] /= l[[i, i]];
    }
    for i in (0..n).rev() {
        for k in (i + 1)..n {
            let v = y[k];
            y[i] -= l[[k, i]] * v;
        }
        y[i] /= l[[i, i]];
    }
    Ok(y)
}

/// Minimum-norm least squares `argmin |Ax - b|` via normal equations and an
/// eigendecomposition-based pseudoinverse. Eigenvalues of A^T A below
/// `PSEUDO_RANK_CUTOFF * lambda_max` are treated as zero, which pins down the
/// solution on rank-deficient systems.
pub fn lstsq_min_norm(a: &ArrayView2<f64>, b: &ArrayView1<f64>) -> Result<Array1<f64>> {
    if a.nrows() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), got: b.len() });
    }
    let gram = a.t().dot(a);
    let rhs = a.t().dot(b);
    let (values, vectors) = jacobi_eigen(&gram.view())?;
    let lambda_max = values.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
    let cutoff = PSEUDO_RANK_CUTOFF * lambda_max.max(f64::MIN_POSITIVE);
    let mut x = Array1::<f64>::zeros(a.ncols());
    for (k, &lambda) in values.iter().enumerate() {
        if lambda > cutoff {
            let coeff = vectors.column(k).dot(&rhs) / lambda;
            x.scaled_add(coeff, &vectors.column(k));
        }
    }
    Ok(x)
}

/// Orthonormal basis of the null space of `m`, via Gaussian elimination with
/// partial pivoting followed by modified Gram-Schmidt. Returns a `cols x d`
/// matrix whose columns span {x : m x = 0}.
pub fn nullspace(m: &ArrayView2<f64>) -> Array2<f64> {
    let rows = m.nrows();
    let cols = m.ncols();
    if rows == 0 || cols == 0 {
        return Array2::eye(cols);
    }
    let mut a = m.to_owned();
    let tol = 1e-10 * max_abs(&m.view()).max(1.0);

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        // partial pivot: largest magnitude, lowest row index on ties
        let mut best_row = row;
        let mut best = a[[row, col]].abs();
        for r in (row + 1)..rows {
            if a[[r, col]].abs() > best {
                best = a[[r, col]].abs();
                best_row = r;
            }
        }
        if best <= tol {
            continue;
        }
        if best_row != row {
            for c in 0..cols {
                a.swap([row, c], [best_row, c]);
            }
        }
        let pivot = a[[row, col]];
        for r in 0..rows {
            if r != row && a[[r, col]].abs() > 0.0 {
                let factor = a[[r, col]] / pivot;
                for c in col..cols {
                    let v = a[[row, c]];
                    a[[r, c]] -= factor * v;
                }
                a[[r, col]] = 0.0;
            }
        }
        pivot_cols.push(col);
        row += 1;
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Array2::<f64>::zeros((cols, free_cols.len()));
    for (j, &fc) in free_cols.iter().enumerate() {
        basis[[fc, j]] = 1.0;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            basis[[pc, j]] = -a[[r, fc]] / a[[r, pc]];
        }
    }
    orthonormalize(&mut basis);
    basis
}

/// In-place modified Gram-Schmidt over columns; drops nothing (columns are
/// independent by construction at the call sites).
pub fn orthonormalize(m: &mut Array2<f64>) {
    let k = m.ncols();
    for j in 0..k {
        for i in 0..j {
            let proj = m.column(i).dot(&m.column(j));
            let prev = m.column(i).to_owned();
            m.column_mut(j).scaled_add(-proj, &prev);
        }
        let norm = m.column(j).dot(&m.column(j)).sqrt();
        if norm > 0.0 {
            m.column_mut(j).mapv_inplace(|x| x / norm);
        }
    }
}

/// Largest eigenvalue of a symmetric PSD matrix (exact, via Jacobi).
pub fn lambda_max(m: &ArrayView2<f64>) -> Result<f64> {
    let (values, _) = jacobi_eigen(m)?;
    Ok(values.iter().fold(0.0_f64, |acc, &x| acc.max(x)))
}
