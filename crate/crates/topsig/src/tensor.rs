//! Tensor representations of hypergraphs: adjacency and Laplacian tensors,
//! the multilinear shift, symmetric CP decomposition, and the hypergraph
//! Fourier transform.
//!
//! A symmetric order-`m` tensor is stored sparsely on canonical keys: each
//! sorted index multiset appears once, and the full tensor holds that value
//! at every permutation of the key. Adjacency constructions are evaluated in
//! exact rational arithmetic first and converted, so fixtures like the
//! degree identity hold exactly.

use std::collections::BTreeMap;

use ndarray::{Array1, Array2};
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg;
use crate::rng::CounterRng;

/// Symmetric tensor with f64 entries on canonical (sorted) keys.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor {
    pub order: usize,
    pub dim: usize,
    entries: BTreeMap<Vec<usize>, f64>,
}

/// Exact-rational twin of [`SymTensor`], used by the adjacency constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalTensor {
    pub order: usize,
    pub dim: usize,
    pub entries: BTreeMap<Vec<usize>, Ratio<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformNormalization {
    /// Entries 1 at hyperedge index permutations.
    Plain,
    /// Entries 1/(k-1)!, making tensor row sums equal vertex degrees.
    Cooper,
    /// Degree-normalized entries 1/(k-1)! * prod_j deg(v_j)^(-1/k).
    Hu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    /// `J - A` on the Hu-normalized adjacency, unit diagonal where deg > 0.
    Hu,
    /// `D - A` on the general adjacency, diagonal = vertex degrees.
    General,
}

impl SymTensor {
    pub fn new(order: usize, dim: usize) -> Self {
        Self { order, dim, entries: BTreeMap::new() }
    }

    pub fn from_entries(order: usize, dim: usize, entries: &[(Vec<usize>, f64)]) -> Result<Self> {
        let mut t = Self::new(order, dim);
        for (key, value) in entries {
            let mut k = key.clone();
            k.sort_unstable();
            if k.len() != order {
                return Err(Error::DimensionMismatch { expected: order, got: k.len() });
            }
            if k.iter().any(|&i| i >= dim) {
                return Err(Error::VertexOutOfRange { index: *k.iter().max().unwrap(), n_vertices: dim });
            }
            t.add(k, *value);
        }
        Ok(t)
    }

    fn add(&mut self, key: Vec<usize>, value: f64) {
        if value == 0.0 {
            return;
        }
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += value;
                if *e.get() == 0.0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
        }
    }

    /// Value at a (not necessarily sorted) index tuple.
    pub fn get(&self, key: &[usize]) -> f64 {
        let mut k = key.to_vec();
        k.sort_unstable();
        self.entries.get(&k).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &f64)> {
        self.entries.iter()
    }

    pub fn num_keys(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Frobenius norm of the fully expanded tensor.
    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .map(|(k, v)| multiset_permutations(k) as f64 * v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Entrywise 1-norm of the fully expanded tensor.
    pub fn entry_abs_sum(&self) -> f64 {
        self.entries.iter().map(|(k, v)| multiset_permutations(k) as f64 * v.abs()).sum()
    }

    /// For order 2, the dense symmetric matrix this tensor encodes.
    pub fn to_matrix(&self) -> Result<Array2<f64>> {
        if self.order != 2 {
            return Err(Error::InvalidParameter {
                name: "order",
                reason: format!("to_matrix needs order 2, tensor has order {}", self.order),
            });
        }
        let mut m = Array2::<f64>::zeros((self.dim, self.dim));
        for (key, &v) in &self.entries {
            m[[key[0], key[1]]] = v;
            m[[key[1], key[0]]] = v;
        }
        Ok(m)
    }

    /// `lambda * v^{outer m}` accumulated in place (used by deflation).
    fn subtract_rank_one(&mut self, lambda: f64, v: &Array1<f64>) {
        let keys = sorted_multisets(self.dim, self.order);
        for key in keys {
            let value: f64 = key.iter().map(|&i| v[i]).product();
            self.add(key, -lambda * value);
        }
    }
}

impl RationalTensor {
    pub fn to_f64(&self) -> SymTensor {
        let mut t = SymTensor::new(self.order, self.dim);
        for (k, v) in &self.entries {
            t.add(k.clone(), ratio_to_f64(v));
        }
        t
    }

    pub fn get(&self, key: &[usize]) -> Ratio<i64> {
        let mut k = key.to_vec();
        k.sort_unstable();
        self.entries.get(&k).copied().unwrap_or_else(Ratio::zero)
    }

    /// Exact sum of all fully-expanded entries whose first index is `v`.
    pub fn first_index_sum(&self, v: usize) -> Ratio<i64> {
        let mut total = Ratio::zero();
        for (key, value) in &self.entries {
            let count = key.iter().filter(|&&i| i == v).count();
            if count == 0 {
                continue;
            }
            let mut rest = key.clone();
            let pos = rest.iter().position(|&i| i == v).unwrap();
            rest.remove(pos);
            total += *value * Ratio::from_integer(multiset_permutations(&rest) as i64);
        }
        total
    }
}

fn ratio_to_f64(r: &Ratio<i64>) -> f64 {
    r.to_f64().unwrap_or_else(|| *r.numer() as f64 / *r.denom() as f64)
}

/// Distinct permutations of a sorted multiset: n! / prod(mult!).
pub fn multiset_permutations(key: &[usize]) -> u64 {
    let mut result = factorial(key.len() as u64);
    let mut i = 0;
    while i < key.len() {
        let mut j = i;
        while j < key.len() && key[j] == key[i] {
            j += 1;
        }
        result /= factorial((j - i) as u64);
        i = j;
    }
    result
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// All sorted index multisets of the given size over `0..dim`.
fn sorted_multisets(dim: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(dim: usize, size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..dim {
            current.push(i);
            rec(dim, size, i, current, out);
            current.pop();
        }
    }
    rec(dim, size, 0, &mut current, &mut out);
    out
}

/// Adjacency tensor of a k-uniform hypergraph, exact entries.
/// `Hu` is not representable in rationals (k-th roots), so it is rejected.
pub fn adjacency_tensor_exact(
    h: &Hypergraph,
    normalization: UniformNormalization,
) -> Result<RationalTensor> {
    let k = h.uniform_cardinality().ok_or(Error::NonUniform)?;
    if normalization == UniformNormalization::Hu {
        return Err(Error::InvalidParameter {
            name: "normalization",
            reason: "degree roots are irrational; use adjacency_tensor".into(),
        });
    }
    let value = match normalization {
        UniformNormalization::Plain => Ratio::from_integer(1),
        UniformNormalization::Cooper => Ratio::new(1, factorial(k as u64 - 1) as i64),
        UniformNormalization::Hu => unreachable!(),
    };
    let mut entries = BTreeMap::new();
    for edge in h.hyperedges() {
        entries.insert(edge.vertices.clone(), value);
    }
    Ok(RationalTensor { order: k, dim: h.n_vertices(), entries })
}

/// Adjacency tensor of a k-uniform hypergraph.
pub fn adjacency_tensor(h: &Hypergraph, normalization: UniformNormalization) -> Result<SymTensor> {
    if normalization != UniformNormalization::Hu {
        return Ok(adjacency_tensor_exact(h, normalization)?.to_f64());
    }
    let k = h.uniform_cardinality().ok_or(Error::NonUniform)?;
    let base = 1.0 / factorial(k as u64 - 1) as f64;
    let mut t = SymTensor::new(k, h.n_vertices());
    for edge in h.hyperedges() {
        let scale: f64 = edge
            .vertices
            .iter()
            .map(|&v| (h.degree(v) as f64).powf(-1.0 / k as f64))
            .product();
        t.add(edge.vertices.clone(), base * scale);
    }
    Ok(t)
}

/// General adjacency tensor for non-uniform hypergraphs, exact entries.
///
/// The order is the largest hyperedge cardinality `m`. A hyperedge of
/// cardinality `s` contributes, at every index multiset that covers all its
/// members at least once, the value `s / sum_(l_1+..+l_s = m, l_j >= 1)
/// m!/(l_1! .. l_s!)`.
pub fn adjacency_tensor_general_exact(h: &Hypergraph) -> Result<RationalTensor> {
    let m = h.max_cardinality();
    if m == 0 {
        return Err(Error::EmptyInput("hypergraph has no hyperedges"));
    }
    let mut entries: BTreeMap<Vec<usize>, Ratio<i64>> = BTreeMap::new();
    for edge in h.hyperedges() {
        let s = edge.vertices.len();
        let comps = compositions(m, s);
        let total: i64 = comps.iter().map(|c| multinomial(m as u64, c) as i64).sum();
        let value = Ratio::new(s as i64, total);
        for comp in &comps {
            let mut key = Vec::with_capacity(m);
            for (j, &mult) in comp.iter().enumerate() {
                for _ in 0..mult {
                    key.push(edge.vertices[j]);
                }
            }
            // members ascend, so the key is already sorted
            let slot = entries.entry(key).or_insert_with(Ratio::zero);
            *slot += value;
        }
    }
    Ok(RationalTensor { order: m, dim: h.n_vertices(), entries })
}

pub fn adjacency_tensor_general(h: &Hypergraph) -> Result<SymTensor> {
    Ok(adjacency_tensor_general_exact(h)?.to_f64())
}

/// Compositions of `total` into exactly `parts` positive integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts);
    fn rec(remaining: usize, parts_left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts_left == 1 {
            if remaining >= 1 {
                current.push(remaining);
                out.push(current.clone());
                current.pop();
            }
            return;
        }
        for take in 1..=(remaining + 1 - parts_left) {
            current.push(take);
            rec(remaining - take, parts_left - 1, current, out);
            current.pop();
        }
    }
    if parts >= 1 && total >= parts {
        rec(total, parts, &mut current, &mut out);
    }
    out
}

fn multinomial(n: u64, parts: &[usize]) -> u64 {
    let mut result = factorial(n);
    for &p in parts {
        result /= factorial(p as u64);
    }
    result
}

/// Laplacian tensor. The adjacency argument must match the requested kind
/// for this hypergraph (it is recomputed and compared).
pub fn laplacian_tensor(a: &SymTensor, kind: LaplacianKind, h: &Hypergraph) -> Result<SymTensor> {
    let expected = match kind {
        LaplacianKind::Hu => adjacency_tensor(h, UniformNormalization::Hu)?,
        LaplacianKind::General => adjacency_tensor_general(h)?,
    };
    if !tensors_close(a, &expected, 1e-12) {
        return Err(Error::TensorMismatch);
    }
    let mut l = SymTensor::new(a.order, a.dim);
    for v in 0..h.n_vertices() {
        let deg = h.degree(v);
        let diagonal = match kind {
            LaplacianKind::Hu => {
                if deg > 0 {
                    1.0
                } else {
                    0.0
                }
            }
            LaplacianKind::General => deg as f64,
        };
        if diagonal != 0.0 {
            l.add(vec![v; a.order], diagonal);
        }
    }
    for (key, &value) in a.entries() {
        l.add(key.clone(), -value);
    }
    Ok(l)
}

fn tensors_close(a: &SymTensor, b: &SymTensor, tol: f64) -> bool {
    if a.order != b.order || a.dim != b.dim {
        return false;
    }
    let keys: std::collections::BTreeSet<&Vec<usize>> =
        a.entries().map(|(k, _)| k).chain(b.entries().map(|(k, _)| k)).collect();
    keys.iter().all(|k| (a.get(k) - b.get(k)).abs() <= tol)
}

/// Multilinear shift: `y_out[i] = sum S[i, j_1..j_{m-1}] y[j_1] .. y[j_{m-1}]`.
/// For order 2 this is the matrix-vector product.
pub fn hg_shift(s: &SymTensor, y: &Array1<f64>) -> Result<Array1<f64>> {
    if y.len() != s.dim {
        return Err(Error::DimensionMismatch { expected: s.dim, got: y.len() });
    }
    let mut out = Array1::<f64>::zeros(s.dim);
    for (key, &value) in s.entries() {
        let mut i = 0;
        while i < key.len() {
            let mut j = i;
            while j < key.len() && key[j] == key[i] {
                j += 1;
            }
            let vertex = key[i];
            // remove one copy of `vertex`, count orderings of the rest
            let mut rest = key.clone();
            rest.remove(i);
            let coeff = multiset_permutations(&rest) as f64;
            let product: f64 = rest.iter().map(|&r| y[r]).product();
            out[vertex] += value * coeff * product;
            i = j;
        }
    }
    Ok(out)
}

/// Full contraction `S y^m` (the Rayleigh value of a unit vector).
pub fn hg_contract(s: &SymTensor, y: &Array1<f64>) -> Result<f64> {
    Ok(y.dot(&hg_shift(s, y)?))
}

/// Jacobian of the shift map: `J[i][l] = d (hg_shift(s, y))_i / d y_l`.
pub fn hg_shift_jacobian(s: &SymTensor, y: &Array1<f64>) -> Result<Array2<f64>> {
    if y.len() != s.dim {
        return Err(Error::DimensionMismatch { expected: s.dim, got: y.len() });
    }
    let mut j = Array2::<f64>::zeros((s.dim, s.dim));
    if s.order < 2 {
        return Ok(j);
    }
    // for a canonical key K with value x and tail R = K minus one i,
    // d s_i / d y_l = x * perms(R) * mult_R(l) * prod_{R minus one l} y,
    // and perms(R) * mult_R(l) = (m-1) * perms(R minus one l)
    let tail_factor = (s.order - 1) as f64;
    for (key, &value) in s.entries() {
        let mut a = 0;
        while a < key.len() {
            let i = key[a];
            let mut rest = key.clone();
            rest.remove(a);
            let mut b = 0;
            while b < rest.len() {
                let l = rest[b];
                let mut remainder = rest.clone();
                remainder.remove(b);
                let coeff = tail_factor * multiset_permutations(&remainder) as f64;
                let product: f64 = remainder.iter().map(|&r| y[r]).product();
                j[[i, l]] += value * coeff * product;
                // skip duplicate values of l within rest
                let mut c = b;
                while c < rest.len() && rest[c] == l {
                    c += 1;
                }
                b = c;
            }
            // skip duplicate values of i within key
            let mut c = a;
            while c < key.len() && key[c] == i {
                c += 1;
            }
            a = c;
        }
    }
    Ok(j)
}

/// Magnitude of the dominant frequency (Z-eigenvalue) of a shift tensor,
/// estimated by the shifted power method with seeded restarts.
pub fn dominant_frequency(s: &SymTensor, seed: u64) -> Result<f64> {
    let (lambda, _, _, _) = dominant_component(s, seed, 0)?;
    Ok(lambda.abs())
}

/// Fourier basis extracted from a symmetric CP decomposition: `R` leading
/// rank-1 components, completed to an orthonormal set of `dim` columns.
#[derive(Debug, Clone)]
pub struct HgFourierBasis {
    /// dim x dim orthonormal columns; the first `rank` come from the CP.
    pub basis: Array2<f64>,
    /// Frequencies of the CP components (length `rank`).
    pub frequencies: Vec<f64>,
    /// True for columns appended by orthonormal completion.
    pub completed: Vec<bool>,
    pub rank: usize,
    pub order: usize,
}

#[derive(Debug, Clone)]
pub struct CpDiagnostics {
    /// Frobenius norm of the residual tensor after deflation.
    pub residual: f64,
    /// Per-component power-iteration convergence.
    pub converged: Vec<bool>,
    pub iterations: Vec<usize>,
}

const CP_TOL: f64 = 1e-10;
const CP_MAX_ITERS: usize = 500;
const CP_RESTARTS: usize = 10;

/// Symmetric CP decomposition by the shifted higher-order power method with
/// deflation: each stage extracts the dominant rank-1 component over
/// `CP_RESTARTS` seeded restarts (both ascent and descent runs), subtracts
/// it, and repeats. Non-convergence is reported in the diagnostics, not
/// fatal. The returned vectors are orthonormalized; the reconstruction
/// residual measures how far the tensor is from an exactly orthogonal CP.
pub fn sym_cp_decompose(
    a: &SymTensor,
    rank: usize,
    seed: u64,
) -> Result<(HgFourierBasis, CpDiagnostics)> {
    let n = a.dim;
    let m = a.order;
    if rank > n {
        return Err(Error::InvalidParameter {
            name: "rank",
            reason: format!("rank {rank} exceeds dimension {n}"),
        });
    }
    if m < 2 {
        return Err(Error::InvalidParameter {
            name: "order",
            reason: format!("need order >= 2, got {m}"),
        });
    }
    let mut work = a.clone();
    let mut vectors: Vec<Array1<f64>> = Vec::with_capacity(rank);
    let mut frequencies = Vec::with_capacity(rank);
    let mut converged = Vec::with_capacity(rank);
    let mut iterations = Vec::with_capacity(rank);

    for component in 0..rank {
        let (lambda, vector, iters, ok) = dominant_component(&work, seed, component)?;
        work.subtract_rank_one(lambda, &vector);
        vectors.push(vector);
        frequencies.push(lambda);
        converged.push(ok);
        iterations.push(iters);
    }

    // orthonormalize the CP directions, then complete with standard basis
    // vectors in index order
    let mut basis = Array2::<f64>::zeros((n, n));
    let mut completed = vec![false; n];
    let mut kept = 0;
    for v in &vectors {
        let mut candidate = v.clone();
        for j in 0..kept {
            let proj = basis.column(j).dot(&candidate);
            let prev = basis.column(j).to_owned();
            candidate.scaled_add(-proj, &prev);
        }
        let norm = candidate.dot(&candidate).sqrt();
        if norm > 1e-8 {
            candidate.mapv_inplace(|x| x / norm);
            basis.column_mut(kept).assign(&candidate);
            kept += 1;
        }
    }
    let rank_kept = kept;
    for e in 0..n {
        if kept == n {
            break;
        }
        let mut candidate = Array1::<f64>::zeros(n);
        candidate[e] = 1.0;
        for j in 0..kept {
            let proj = basis.column(j).dot(&candidate);
            let prev = basis.column(j).to_owned();
            candidate.scaled_add(-proj, &prev);
        }
        let norm = candidate.dot(&candidate).sqrt();
        if norm > 1e-8 {
            candidate.mapv_inplace(|x| x / norm);
            basis.column_mut(kept).assign(&candidate);
            completed[kept] = true;
            kept += 1;
        }
    }

    let diag = CpDiagnostics { residual: work.frobenius(), converged, iterations };
    Ok((
        HgFourierBasis { basis, frequencies, completed, rank: rank_kept, order: m },
        diag,
    ))
}

fn dominant_component(
    a: &SymTensor,
    seed: u64,
    component: usize,
) -> Result<(f64, Array1<f64>, usize, bool)> {
    let n = a.dim;
    if a.is_zero() {
        let mut v = Array1::<f64>::zeros(n);
        v[component.min(n - 1)] = 1.0;
        return Ok((0.0, v, 0, true));
    }
    // convexity shift: the Z-spectral radius is bounded by the Frobenius
    // norm, so (m-1) * |A|_F keeps the shifted ascent monotone
    let alpha = (a.order as f64 - 1.0).max(1.0) * a.frobenius().max(1e-300);
    let mut best: Option<(f64, Array1<f64>, usize, bool)> = None;
    for restart in 0..CP_RESTARTS {
        let mut rng = CounterRng::new(
            seed ^ (component as u64).wrapping_mul(0x9E37_79B9) ^ ((restart as u64) << 32),
        );
        let mut start = Array1::<f64>::zeros(n);
        for x in start.iter_mut() {
            *x = rng.uniform_in(-1.0, 1.0);
        }
        let norm = start.dot(&start).sqrt();
        if norm == 0.0 {
            continue;
        }
        start.mapv_inplace(|x| x / norm);
        for maximize in [true, false] {
            let (lambda, v, iters, ok) = ss_hopm(a, start.clone(), alpha, maximize)?;
            let better = best.as_ref().is_none_or(|(bl, ..)| lambda.abs() > bl.abs() + 1e-14);
            if better {
                best = Some((lambda, v, iters, ok));
            }
        }
    }
    let (mut lambda, mut v, iters, ok) = best.expect("at least one restart ran");
    if a.order % 2 == 1 && lambda < 0.0 {
        // odd order: (lambda, v) and (-lambda, -v) are the same component
        lambda = -lambda;
        v.mapv_inplace(|x| -x);
    }
    if a.order.is_multiple_of(2) {
        linalg::fix_sign(&mut v);
    }
    Ok((lambda, v, iters, ok))
}

fn ss_hopm(
    a: &SymTensor,
    mut y: Array1<f64>,
    alpha: f64,
    maximize: bool,
) -> Result<(f64, Array1<f64>, usize, bool)> {
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut lambda = hg_contract(a, &y)?;
    for iter in 0..CP_MAX_ITERS {
        let g = hg_shift(a, &y)?;
        let mut next = g * sign + &(alpha * &y);
        let norm = next.dot(&next).sqrt();
        if norm == 0.0 {
            return Ok((0.0, y, iter, true));
        }
        next.mapv_inplace(|x| x / norm);
        // iterate-change criterion: the eigenvalue converges twice as fast
        // as the vector, so stopping on the vector keeps deflation clean
        let drift = next
            .iter()
            .zip(y.iter())
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()));
        lambda = hg_contract(a, &next)?;
        y = next;
        if drift <= CP_TOL {
            return Ok((lambda, y, iter + 1, true));
        }
    }
    Ok((lambda, y, CP_MAX_ITERS, false))
}

/// Transform coefficients: entrywise (m-1) power of `V^T y`, with the signs
/// of `V^T y` kept so the inverse stays well-defined for even powers.
#[derive(Debug, Clone)]
pub struct HgftCoefficients {
    pub powered: Array1<f64>,
    pub signs: Vec<i8>,
    pub order: usize,
}

impl HgftCoefficients {
    /// Coefficients supplied from outside (e.g. a file) carry no stored
    /// signs; negative entries are then unrecoverable under even powers.
    pub fn from_raw(powered: Array1<f64>, order: usize) -> Result<Self> {
        if order >= 3 && (order - 1).is_multiple_of(2) {
            if let Some(i) = powered.iter().position(|&p| p < 0.0) {
                return Err(Error::AmbiguousRoot { index: i, power: order - 1 });
            }
        }
        let signs = vec![1; powered.len()];
        Ok(Self { powered, signs, order })
    }
}

/// Hypergraph Fourier transform: `(V^T y)^(m-1)` entrywise.
pub fn hgft(v: &HgFourierBasis, y: &Array1<f64>, m: usize) -> Result<HgftCoefficients> {
    if m < 2 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: format!("need m >= 2, got {m}"),
        });
    }
    if y.len() != v.basis.nrows() {
        return Err(Error::DimensionMismatch { expected: v.basis.nrows(), got: y.len() });
    }
    let c = v.basis.t().dot(y);
    let signs = c.iter().map(|&x| if x < 0.0 { -1i8 } else { 1i8 }).collect();
    let powered = c.mapv(|x| x.powi((m - 1) as i32));
    Ok(HgftCoefficients { powered, signs, order: m })
}

/// Inverse transform: entrywise (m-1)-th root (signed through the stored
/// signs when the power is even), then `V`.
pub fn ihgft(v: &HgFourierBasis, coefficients: &HgftCoefficients, m: usize) -> Result<Array1<f64>> {
    if coefficients.powered.len() != v.basis.ncols() {
        return Err(Error::DimensionMismatch {
            expected: v.basis.ncols(),
            got: coefficients.powered.len(),
        });
    }
    let power = m - 1;
    let mut c = Array1::<f64>::zeros(coefficients.powered.len());
    for (i, &p) in coefficients.powered.iter().enumerate() {
        c[i] = if power % 2 == 1 {
            p.signum() * p.abs().powf(1.0 / power as f64)
        } else {
            if p < -1e-15 {
                return Err(Error::AmbiguousRoot { index: i, power });
            }
            f64::from(coefficients.signs[i]) * p.max(0.0).powf(1.0 / power as f64)
        };
    }
    Ok(v.basis.dot(&c))
}
