//! Oriented simplicial complexes and their boundary operators.
//!
//! A complex stores, for each order `k`, the sorted list of its `k`-simplices
//! as strictly increasing vertex tuples. The position of a tuple in that list
//! is its canonical index; every vector and matrix in the crate indexes
//! against it. The reference orientation of a simplex is the ascending order
//! of its vertices, and boundary matrices follow the alternating sign rule:
//! the face obtained by deleting the `j`-th vertex (0-based) enters with sign
//! `(-1)^j`. Boundary entries are kept as integers so that the chain property
//! `B_k B_{k+1} = 0` can be checked exactly.

use std::collections::BTreeSet;
use std::fmt;

use ndarray::Array2;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    /// `simplices[k]` holds the (k+1)-tuples, each ascending, the list sorted.
    simplices: Vec<Vec<Vec<usize>>>,
}

/// Signed incidence of (k-1)-simplices (rows) against k-simplices (columns).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub k: usize,
    pub rows: usize,
    pub cols: usize,
    /// For each column, its (row, sign) entries; exactly k+1 per column.
    pub columns: Vec<Vec<(usize, i8)>>,
}

/// First structural violation found by [`SimplicialComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { order: usize, simplex: Vec<usize> },
    NotAscending { order: usize, simplex: Vec<usize> },
    NotSortedOrDuplicate { order: usize, position: usize },
    MissingFace { order: usize, simplex: Vec<usize>, face: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { order, simplex } => {
                write!(f, "{order}-simplex {simplex:?} has a vertex out of range")
            }
            Violation::NotAscending { order, simplex } => {
                write!(f, "{order}-simplex {simplex:?} is not strictly increasing")
            }
            Violation::NotSortedOrDuplicate { order, position } => {
                write!(f, "{order}-simplex list out of order or duplicated at position {position}")
            }
            Violation::MissingFace { order, simplex, face } => {
                write!(f, "face {face:?} of {order}-simplex {simplex:?} is missing")
            }
        }
    }
}

impl SimplicialComplex {
    /// Build the inclusion closure of a facet list.
    ///
    /// Every facet and every subset of every facet becomes a simplex; lists
    /// come out sorted and duplicate-free.
    pub fn from_facets(facets: &[Vec<usize>], n_vertices: usize) -> Result<Self> {
        let mut by_order: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for (position, facet) in facets.iter().enumerate() {
            if facet.is_empty() {
                return Err(Error::EmptyFacet { position });
            }
            let mut sorted: Vec<usize> = facet.clone();
            sorted.sort_unstable();
            sorted.dedup();
            for &v in &sorted {
                if v >= n_vertices {
                    return Err(Error::VertexOutOfRange { index: v, n_vertices });
                }
            }
            let k = sorted.len() - 1;
            while by_order.len() <= k {
                by_order.push(BTreeSet::new());
            }
            for (order, set) in by_order.iter_mut().enumerate().take(k + 1) {
                for subset in subsets_of_len(&sorted, order + 1) {
                    set.insert(subset);
                }
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> =
            by_order.into_iter().map(|set| set.into_iter().collect()).collect();
        Ok(Self { n_vertices, simplices })
    }

    /// Assemble a complex from per-order simplex lists without checking
    /// anything. Intended for validation tooling that wants to run
    /// [`SimplicialComplex::validate`] on possibly-broken data.
    pub fn from_simplex_lists_unchecked(n_vertices: usize, lists: Vec<Vec<Vec<usize>>>) -> Self {
        Self { n_vertices, simplices: lists }
    }

    /// Assemble a complex from explicit per-order simplex lists (e.g. parsed
    /// from a file). Lists are sorted and deduplicated; closure is checked.
    pub fn from_simplex_lists(n_vertices: usize, mut lists: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        while lists.last().is_some_and(|l| l.is_empty()) {
            lists.pop();
        }
        for (k, list) in lists.iter_mut().enumerate() {
            for tuple in list.iter_mut() {
                tuple.sort_unstable();
                tuple.dedup();
                if tuple.len() != k + 1 {
                    return Err(Error::InvalidParameter {
                        name: "simplices",
                        reason: format!("tuple {tuple:?} is not a {k}-simplex"),
                    });
                }
                for &v in tuple.iter() {
                    if v >= n_vertices {
                        return Err(Error::VertexOutOfRange { index: v, n_vertices });
                    }
                }
            }
            list.sort_unstable();
            list.dedup();
        }
        let complex = Self { n_vertices, simplices: lists };
        if let Err(violation) = complex.validate() {
            return Err(Error::InvalidParameter {
                name: "simplices",
                reason: violation.to_string(),
            });
        }
        Ok(complex)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top order K (a complex with only vertices has K = 0).
    pub fn top_order(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// Simplices of order `k` in canonical order (empty slice above K).
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn num_simplices(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    /// Canonical index of a simplex, if present.
    pub fn index_of(&self, k: usize, simplex: &[usize]) -> Option<usize> {
        self.simplices(k).binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    /// Canonical index of the edge {a, b}.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let e = if a < b { [a, b] } else { [b, a] };
        self.index_of(1, &e)
    }

    /// Signed boundary operator from k-simplices to (k-1)-simplices.
    pub fn boundary_matrix(&self, k: usize) -> Result<BoundaryMatrix> {
        let top = self.top_order();
        if k < 1 || k > top {
            return Err(Error::OrderOutOfRange { k, top });
        }
        let rows = self.num_simplices(k - 1);
        let cols = self.num_simplices(k);
        let mut columns = Vec::with_capacity(cols);
        for simplex in self.simplices(k) {
            let mut entries = Vec::with_capacity(k + 1);
            for (j, face) in faces_of(simplex).enumerate() {
                let row = self
                    .index_of(k - 1, &face)
                    .expect("closure invariant: every face is present");
                let sign = if j % 2 == 0 { 1 } else { -1 };
                entries.push((row, sign));
            }
            entries.sort_unstable_by_key(|&(row, _)| row);
            columns.push(entries);
        }
        Ok(BoundaryMatrix { k, rows, cols, columns })
    }

    /// Report the first inclusion-closure or ordering violation, if any.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (k, list) in self.simplices.iter().enumerate() {
            for (position, simplex) in list.iter().enumerate() {
                if simplex.len() != k + 1 || !simplex.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Violation::NotAscending { order: k, simplex: simplex.clone() });
                }
                if simplex.iter().any(|&v| v >= self.n_vertices) {
                    return Err(Violation::VertexOutOfRange { order: k, simplex: simplex.clone() });
                }
                if position > 0 && list[position - 1] >= *simplex {
                    return Err(Violation::NotSortedOrDuplicate { order: k, position });
                }
                if k > 0 {
                    for face in faces_of(simplex) {
                        if self.index_of(k - 1, &face).is_none() {
                            return Err(Violation::MissingFace {
                                order: k,
                                simplex: simplex.clone(),
                                face,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Facet list (simplices with no co-face); rebuilding from it is identity.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for k in 0..=self.top_order() {
            for simplex in self.simplices(k) {
                let has_coface = self
                    .simplices(k + 1)
                    .iter()
                    .any(|s| simplex.iter().all(|v| s.contains(v)));
                if !has_coface {
                    out.push(simplex.clone());
                }
            }
        }
        out
    }

    /// The complex with vertex `v` and every simplex containing it removed.
    pub fn remove_vertex(&self, v: usize) -> Self {
        let simplices: Vec<Vec<Vec<usize>>> = self
            .simplices
            .iter()
            .map(|list| list.iter().filter(|s| !s.contains(&v)).cloned().collect())
            .collect();
        let mut out = Self { n_vertices: self.n_vertices, simplices };
        while out.simplices.last().is_some_and(|l| l.is_empty()) {
            out.simplices.pop();
        }
        out
    }

    /// Neighbors of a vertex in the 1-skeleton.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for e in self.simplices(1) {
            if e[0] == v {
                out.push(e[1]);
            } else if e[1] == v {
                out.push(e[0]);
            }
        }
        out
    }

    /// Cheapest vertex path between two vertices in the 1-skeleton under a
    /// per-edge cost. Dijkstra with lowest-index tie-breaks.
    pub fn vertex_path(
        &self,
        src: usize,
        dst: usize,
        cost: &dyn Fn(usize, usize) -> f64,
    ) -> Option<Vec<usize>> {
        use std::cmp::Ordering;
        use std::collections::BinaryHeap;

        #[derive(PartialEq)]
        struct Item(f64, usize);
        impl Eq for Item {}
        impl Ord for Item {
            fn cmp(&self, other: &Self) -> Ordering {
                // min-heap on cost, then on vertex index
                other
                    .0
                    .partial_cmp(&self.0)
                    .unwrap_or(Ordering::Equal)
                    .then(other.1.cmp(&self.1))
            }
        }
        impl PartialOrd for Item {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        let n = self.n_vertices;
        if src >= n || dst >= n {
            return None;
        }
        let mut dist = vec![f64::INFINITY; n];
        let mut prev = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[src] = 0.0;
        heap.push(Item(0.0, src));
        while let Some(Item(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            if u == dst {
                break;
            }
            for w in self.neighbors(u) {
                let nd = d + cost(u, w);
                if nd < dist[w] {
                    dist[w] = nd;
                    prev[w] = u;
                    heap.push(Item(nd, w));
                }
            }
        }
        if dist[dst].is_infinite() {
            return None;
        }
        let mut path = vec![dst];
        let mut cur = dst;
        while cur != src {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

impl BoundaryMatrix {
    pub fn to_dense(&self) -> Array2<f64> {
        let mut m = Array2::<f64>::zeros((self.rows, self.cols));
        for (col, entries) in self.columns.iter().enumerate() {
            for &(row, sign) in entries {
                m[[row, col]] = f64::from(sign);
            }
        }
        m
    }

    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.cols]; self.rows];
        for (col, entries) in self.columns.iter().enumerate() {
            for &(row, sign) in entries {
                m[row][col] = i64::from(sign);
            }
        }
        m
    }

    /// Exact integer check that `self * next` is the zero matrix.
    pub fn composes_to_zero(&self, next: &BoundaryMatrix) -> bool {
        if self.cols != next.rows {
            return false;
        }
        let mut acc = vec![0i64; self.rows];
        for next_col in &next.columns {
            for v in acc.iter_mut() {
                *v = 0;
            }
            for &(mid, s2) in next_col {
                for &(row, s1) in &self.columns[mid] {
                    acc[row] += i64::from(s1) * i64::from(s2);
                }
            }
            if acc.iter().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }
}

/// Convenience wrapper matching the facet-construction entry point.
pub fn build_complex(facets: &[Vec<usize>], n_vertices: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::from_facets(facets, n_vertices)
}

fn faces_of(simplex: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..simplex.len()).map(move |j| {
        let mut face = Vec::with_capacity(simplex.len() - 1);
        face.extend_from_slice(&simplex[..j]);
        face.extend_from_slice(&simplex[j + 1..]);
        face
    })
}

fn subsets_of_len(set: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(set: &[usize], len: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in start..set.len() {
            current.push(set[i]);
            rec(set, len, i + 1, current, out);
            current.pop();
        }
    }
    rec(set, len, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::fig_complex;

    #[test]
    fn figure_complex_counts() {
        let x = fig_complex();
        assert_eq!(x.n_vertices(), 7);
        assert_eq!(x.num_simplices(0), 7);
        assert_eq!(x.num_simplices(1), 10);
        assert_eq!(x.num_simplices(2), 2);
        assert_eq!(x.top_order(), 2);
    }

    #[test]
    fn single_vertex_complex() {
        let x = build_complex(&[vec![0]], 1).unwrap();
        assert_eq!(x.top_order(), 0);
        assert_eq!(x.num_simplices(0), 1);
        assert_eq!(x.num_simplices(1), 0);
    }

    #[test]
    fn triangle_closure_is_generated() {
        let x = build_complex(&[vec![0, 1, 2]], 3).unwrap();
        assert_eq!(x.num_simplices(0), 3);
        assert_eq!(x.num_simplices(1), 3);
        assert_eq!(x.num_simplices(2), 1);
        assert_eq!(x.simplices(1), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn out_of_range_facet_is_rejected() {
        assert!(matches!(
            build_complex(&[vec![0, 7]], 7),
            Err(Error::VertexOutOfRange { index: 7, .. })
        ));
    }

    #[test]
    fn empty_facet_is_rejected() {
        assert!(matches!(build_complex(&[vec![]], 3), Err(Error::EmptyFacet { position: 0 })));
    }

    /// The 7-node running example: B_1 is the exact 7x10 signed incidence.
    #[test]
    fn boundary_one_matches_worked_example() {
        let x = fig_complex();
        let b1 = x.boundary_matrix(1).unwrap();
        assert_eq!((b1.rows, b1.cols), (7, 10));
        let expected: [[i64; 10]; 7] = [
            [-1, -1, -1, 0, 0, 0, 0, 0, 0, 0],
            [1, 0, 0, -1, 0, 0, 0, 0, 0, 0],
            [0, 1, 0, 1, -1, -1, 0, 0, 0, 0],
            [0, 0, 1, 0, 1, 0, -1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, -1, -1, 0],
            [0, 0, 0, 0, 0, 1, 0, 1, 0, -1],
            [0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
        ];
        let dense = b1.to_dense_i64();
        for (row, expected_row) in expected.iter().enumerate() {
            assert_eq!(dense[row], expected_row.to_vec(), "row {row}");
        }
    }

    /// Same fixture for B_2: the columns of the two filled triangles.
    #[test]
    fn boundary_two_matches_worked_example() {
        let x = fig_complex();
        let b2 = x.boundary_matrix(2).unwrap();
        assert_eq!((b2.rows, b2.cols), (10, 2));
        let expected_t0: [i64; 10] = [0, 1, -1, 0, 1, 0, 0, 0, 0, 0];
        let expected_t1: [i64; 10] = [0, 0, 0, 0, 0, 0, 0, 1, -1, 1];
        let dense = b2.to_dense_i64();
        for row in 0..10 {
            assert_eq!(dense[row][0], expected_t0[row], "triangle (1,3,4) row {row}");
            assert_eq!(dense[row][1], expected_t1[row], "triangle (5,6,7) row {row}");
        }
        assert!(x.boundary_matrix(1).unwrap().composes_to_zero(&b2));
    }

    #[test]
    fn boundary_of_single_triangle() {
        let x = build_complex(&[vec![0, 1, 2]], 3).unwrap();
        let b2 = x.boundary_matrix(2).unwrap();
        let dense = b2.to_dense_i64();
        assert_eq!(dense[0][0], 1); // edge (0,1)
        assert_eq!(dense[1][0], -1); // edge (0,2)
        assert_eq!(dense[2][0], 1); // edge (1,2)
    }

    #[test]
    fn boundary_rejects_out_of_range_order() {
        let x = fig_complex();
        assert!(matches!(x.boundary_matrix(3), Err(Error::OrderOutOfRange { k: 3, top: 2 })));
        assert!(matches!(x.boundary_matrix(0), Err(Error::OrderOutOfRange { k: 0, top: 2 })));
    }

    #[test]
    fn column_counts_are_order_plus_one() {
        let x = fig_complex();
        for k in 1..=x.top_order() {
            let b = x.boundary_matrix(k).unwrap();
            for col in &b.columns {
                assert_eq!(col.len(), k + 1);
            }
        }
    }

    #[test]
    fn row_nonzeros_count_cofaces() {
        let x = fig_complex();
        for k in 1..=x.top_order() {
            let b = x.boundary_matrix(k).unwrap();
            let mut row_nonzeros = vec![0usize; b.rows];
            for col in &b.columns {
                for &(row, _) in col {
                    row_nonzeros[row] += 1;
                }
            }
            for (r, face) in x.simplices(k - 1).iter().enumerate() {
                let cofaces = x
                    .simplices(k)
                    .iter()
                    .filter(|s| face.iter().all(|v| s.contains(v)))
                    .count();
                assert_eq!(row_nonzeros[r], cofaces, "order {k}, face {face:?}");
            }
        }
    }

    #[test]
    fn chain_property_on_random_complexes() {
        let mut rng = crate::rng::CounterRng::new(19);
        for _ in 0..10 {
            let x = crate::testing::random_complex(&mut rng, 9, 0.5, 0.6);
            for k in 1..x.top_order() {
                let b_k = x.boundary_matrix(k).unwrap();
                let b_next = x.boundary_matrix(k + 1).unwrap();
                assert!(b_k.composes_to_zero(&b_next), "order {k}");
            }
        }
    }

    #[test]
    fn validate_accepts_fixture_and_empty() {
        assert!(fig_complex().validate().is_ok());
        let empty = SimplicialComplex { n_vertices: 0, simplices: vec![] };
        assert!(empty.validate().is_ok());
    }

    #[test]
    fn validate_reports_missing_face() {
        // triangle {0,1,2} with edge (1,2) removed by hand
        let broken = SimplicialComplex {
            n_vertices: 3,
            simplices: vec![
                vec![vec![0], vec![1], vec![2]],
                vec![vec![0, 1], vec![0, 2]],
                vec![vec![0, 1, 2]],
            ],
        };
        match broken.validate() {
            Err(Violation::MissingFace { simplex, face, .. }) => {
                assert_eq!(simplex, vec![0, 1, 2]);
                assert_eq!(face, vec![1, 2]);
            }
            other => panic!("expected missing face, got {other:?}"),
        }
    }

    #[test]
    fn rebuilding_from_facets_is_identity() {
        let x = fig_complex();
        let rebuilt = build_complex(&x.facets(), x.n_vertices()).unwrap();
        assert_eq!(x, rebuilt);
    }

    #[test]
    fn skeleton_l0_matches_degree_minus_adjacency() {
        let mut rng = crate::rng::CounterRng::new(17);
        for _ in 0..10 {
            let n = 4 + rng.below(16);
            let mut facets = Vec::new();
            for i in 0..n {
                facets.push(vec![i]);
                for j in (i + 1)..n {
                    if rng.uniform() < 0.35 {
                        facets.push(vec![i, j]);
                    }
                }
            }
            let x = build_complex(&facets, n).unwrap();
            if x.top_order() < 1 {
                continue;
            }
            let b1 = x.boundary_matrix(1).unwrap().to_dense();
            let l0 = b1.dot(&b1.t());
            // direct degree/adjacency construction
            let mut expected = Array2::<f64>::zeros((n, n));
            for e in x.simplices(1) {
                expected[[e[0], e[0]]] += 1.0;
                expected[[e[1], e[1]]] += 1.0;
                expected[[e[0], e[1]]] -= 1.0;
                expected[[e[1], e[0]]] -= 1.0;
            }
            assert_eq!(l0, expected);
        }
    }

    #[test]
    fn dijkstra_finds_straight_path() {
        let x = build_complex(&[vec![0, 1], vec![1, 2], vec![2, 3]], 4).unwrap();
        let path = x.vertex_path(0, 3, &|_, _| 1.0).unwrap();
        assert_eq!(path, vec![0, 1, 2, 3]);
        assert!(x.vertex_path(0, 3, &|_, _| 1.0).is_some());
    }
}
