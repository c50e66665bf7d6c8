//! Shared fixtures and independent oracles used by tests and benches.
//!
//! The rank routine here is deliberately separate from the float linear
//! algebra in [`crate::linalg`]: it eliminates over prime fields with exact
//! integer arithmetic, so it can serve as an oracle for the numeric code.

use ndarray::Array2;

use crate::complex::{build_complex, SimplicialComplex};
use crate::hypergraph::Hypergraph;
use crate::rng::CounterRng;

/// The 7-node running example: ten edges, two filled triangles
/// {1,3,4} and {5,6,7} (1-indexed in the figures, 0-indexed here).
pub fn fig_complex() -> SimplicialComplex {
    build_complex(
        &[
            vec![0, 2, 3],
            vec![4, 5, 6],
            vec![0, 1],
            vec![1, 2],
            vec![2, 5],
            vec![3, 4],
        ],
        7,
    )
    .expect("fixture is valid")
}

/// The edge flow decomposed in the worked example, canonical edge order.
pub fn fig_flow() -> Vec<f64> {
    vec![-4.0, -2.0, 4.0, -2.0, 3.0, -7.0, 7.0, 3.0, 4.0, -4.0]
}

/// The partially observed flow of the interpolation example (cyclic).
pub fn fig_interpolation_flow() -> Vec<f64> {
    vec![-2.0, -2.0, 4.0, -2.0, 3.0, -7.0, 7.0, 3.0, 4.0, -4.0]
}

/// Labeled edges of the interpolation example: (1,3),(1,4),(3,6),(4,5),(5,6)
/// one-indexed, as canonical edge indices.
pub fn fig_labeled_edges() -> Vec<usize> {
    vec![1, 2, 5, 6, 7]
}

/// Random simplicial complex: a G(n, p) skeleton with every 3-clique filled
/// as a triangle with probability `fill`.
#[allow(clippy::needless_range_loop)]
pub fn random_complex(rng: &mut CounterRng, n: usize, edge_p: f64, fill: f64) -> SimplicialComplex {
    let mut adj = vec![vec![false; n]; n];
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        facets.push(vec![i]);
        for j in (i + 1)..n {
            if rng.uniform() < edge_p {
                adj[i][j] = true;
                facets.push(vec![i, j]);
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !adj[i][j] {
                continue;
            }
            for l in (j + 1)..n {
                if adj[i][l] && adj[j][l] && rng.uniform() < fill {
                    facets.push(vec![i, j, l]);
                }
            }
        }
    }
    build_complex(&facets, n).expect("generated facets are valid")
}

/// Random weighted hypergraph with `n` vertices and `m` hyperedges of
/// cardinality in [lo, hi].
pub fn random_hypergraph(rng: &mut CounterRng, n: usize, m: usize, lo: usize, hi: usize) -> Hypergraph {
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let card = lo + rng.below(hi - lo + 1);
        let mut members = Vec::new();
        while members.len() < card.min(n) {
            let v = rng.below(n);
            if !members.contains(&v) {
                members.push(v);
            }
        }
        members.sort_unstable();
        let weight = 0.5 + rng.uniform();
        edges.push((members, weight));
    }
    Hypergraph::new(n, &edges).expect("generated hyperedges are valid")
}

/// Exact rank of an integer matrix by Gaussian elimination over two large
/// prime fields (the max over both; entries here have tiny minors, so a
/// single prime already gives the rational rank).
pub fn rank_oracle(m: &[Vec<i64>]) -> usize {
    const PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];
    PRIMES.iter().map(|&p| rank_mod_p(m, p)).max().unwrap_or(0)
}

#[allow(clippy::needless_range_loop)]
fn rank_mod_p(m: &[Vec<i64>], p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|&x| (x.rem_euclid(p as i64)) as u64).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        if rank >= rows {
            break;
        }
        let pivot_row = (rank..rows).find(|&r| a[r][col] != 0);
        let Some(pr) = pivot_row else { continue };
        a.swap(rank, pr);
        let inv = mod_inverse(a[rank][col], p);
        for c in col..cols {
            a[rank][c] = a[rank][c] * inv % p;
        }
        for r in 0..rows {
            if r != rank && a[r][col] != 0 {
                let factor = a[r][col];
                for c in col..cols {
                    let sub = factor * a[rank][c] % p;
                    a[r][c] = (a[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    // Fermat: x^(p-2) mod p
    let mut base = x % p;
    let mut exp = p - 2;
    let mut acc: u64 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.wrapping_mul(base) % p;
        }
        base = base.wrapping_mul(base) % p;
        exp >>= 1;
    }
    acc
}

/// Float rank for dense oracles at desk scale (counts pivots above a
/// relative threshold).
pub fn rank_oracle_dense(m: &Array2<f64>) -> usize {
    let int: Vec<Vec<i64>> = (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[[r, c]].round() as i64).collect())
        .collect();
    rank_oracle(&int)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_identity() {
        let m = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(rank_oracle(&m), 2);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 0]];
        assert_eq!(rank_oracle(&m), 2);
    }

    #[test]
    fn rank_of_zero() {
        let m = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(rank_oracle(&m), 0);
    }

    #[test]
    fn fig_complex_incidence_ranks() {
        let x = fig_complex();
        let b1 = x.boundary_matrix(1).unwrap().to_dense_i64();
        let b2 = x.boundary_matrix(2).unwrap().to_dense_i64();
        assert_eq!(rank_oracle(&b1), 6); // connected on 7 vertices
        assert_eq!(rank_oracle(&b2), 2); // two independent triangles
    }

    #[test]
    fn random_complex_is_closed() {
        let mut rng = CounterRng::new(23);
        for _ in 0..5 {
            let x = random_complex(&mut rng, 10, 0.5, 0.6);
            assert!(x.validate().is_ok());
        }
    }
}
