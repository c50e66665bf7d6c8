//! Weighted homogeneous hypergraphs, their incidence structure, and the
//! classical matrix expansions.

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    pub vertices: Vec<usize>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n_vertices: usize,
    hyperedges: Vec<Hyperedge>,
}

/// Where a node of an expansion graph came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeProvenance {
    Vertex(usize),
    Hyperedge(usize),
    /// A (vertex, hyperedge) incidence pair.
    Incidence(usize, usize),
}

/// A graph derived from a hypergraph: symmetric nonnegative adjacency with a
/// zero diagonal, plus the provenance of each node.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionGraph {
    pub adjacency: Array2<f64>,
    pub provenance: Vec<NodeProvenance>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    Star,
    Clique,
    LineGraph,
    LineExpansion,
    Dual,
}

/// Result of [`expand`]: the dual stays a hypergraph, everything else
/// becomes a graph.
#[derive(Debug, Clone, PartialEq)]
pub enum Expansion {
    Graph(ExpansionGraph),
    Dual(Hypergraph),
}

impl Hypergraph {
    pub fn new(n_vertices: usize, hyperedges: &[(Vec<usize>, f64)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(hyperedges.len());
        for (position, (members, weight)) in hyperedges.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::EmptyHyperedge { position });
            }
            if weight.is_nan() || *weight <= 0.0 {
                return Err(Error::BadWeight { position, weight: *weight });
            }
            let mut vertices = members.clone();
            vertices.sort_unstable();
            vertices.dedup();
            for &v in &vertices {
                if v >= n_vertices {
                    return Err(Error::VertexOutOfRange { index: v, n_vertices });
                }
            }
            edges.push(Hyperedge { vertices, weight: *weight });
        }
        Ok(Self { n_vertices, hyperedges: edges })
    }

    /// Unit-weight hyperedges.
    pub fn unweighted(n_vertices: usize, hyperedges: &[Vec<usize>]) -> Result<Self> {
        let weighted: Vec<(Vec<usize>, f64)> =
            hyperedges.iter().map(|e| (e.clone(), 1.0)).collect();
        Self::new(n_vertices, &weighted)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_hyperedges(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    /// Number of hyperedges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.hyperedges.iter().filter(|e| e.vertices.contains(&v)).count()
    }

    /// Some(k) when every hyperedge has cardinality k.
    pub fn uniform_cardinality(&self) -> Option<usize> {
        let first = self.hyperedges.first()?.vertices.len();
        self.hyperedges.iter().all(|e| e.vertices.len() == first).then_some(first)
    }

    /// Largest hyperedge cardinality (0 for an edgeless hypergraph).
    pub fn max_cardinality(&self) -> usize {
        self.hyperedges.iter().map(|e| e.vertices.len()).max().unwrap_or(0)
    }

    /// Duplicate hyperedges are legal but worth surfacing to the caller.
    pub fn has_duplicate_hyperedges(&self) -> bool {
        let mut seen: Vec<&[usize]> = Vec::with_capacity(self.hyperedges.len());
        for e in &self.hyperedges {
            if seen.contains(&e.vertices.as_slice()) {
                return true;
            }
            seen.push(&e.vertices);
        }
        false
    }

    /// Vertex-to-hyperedge incidence `Z` (0/1) and the weight vector.
    pub fn incidence(&self) -> (Array2<f64>, Array1<f64>) {
        let mut z = Array2::<f64>::zeros((self.n_vertices, self.hyperedges.len()));
        let mut w = Array1::<f64>::zeros(self.hyperedges.len());
        for (e, edge) in self.hyperedges.iter().enumerate() {
            w[e] = edge.weight;
            for &v in &edge.vertices {
                z[[v, e]] = 1.0;
            }
        }
        (z, w)
    }
}

/// Compute a matrix expansion of the hypergraph.
pub fn expand(h: &Hypergraph, kind: ExpansionKind) -> Expansion {
    match kind {
        ExpansionKind::Star => Expansion::Graph(star_expansion(h)),
        ExpansionKind::Clique => Expansion::Graph(clique_expansion(h)),
        ExpansionKind::LineGraph => Expansion::Graph(line_graph(h)),
        ExpansionKind::LineExpansion => Expansion::Graph(line_expansion(h)),
        ExpansionKind::Dual => Expansion::Dual(dual(h)),
    }
}

/// Bipartite star expansion: original vertices against hyperedge nodes, each
/// incidence weighted by the hyperedge weight.
pub fn star_expansion(h: &Hypergraph) -> ExpansionGraph {
    let (z, w) = h.incidence();
    let nv = h.n_vertices();
    let ne = h.n_hyperedges();
    let mut adjacency = Array2::<f64>::zeros((nv + ne, nv + ne));
    for v in 0..nv {
        for e in 0..ne {
            let weight = z[[v, e]] * w[e];
            adjacency[[v, nv + e]] = weight;
            adjacency[[nv + e, v]] = weight;
        }
    }
    let provenance = (0..nv)
        .map(NodeProvenance::Vertex)
        .chain((0..ne).map(NodeProvenance::Hyperedge))
        .collect();
    ExpansionGraph { adjacency, provenance }
}

/// Weighted clique expansion: `omega_c(u, v)` sums the weights of hyperedges
/// containing both endpoints (the zero-diagonal projection `Z W Z^T`).
pub fn clique_expansion(h: &Hypergraph) -> ExpansionGraph {
    let nv = h.n_vertices();
    let mut adjacency = Array2::<f64>::zeros((nv, nv));
    for edge in h.hyperedges() {
        for (i, &u) in edge.vertices.iter().enumerate() {
            for &v in &edge.vertices[i + 1..] {
                adjacency[[u, v]] += edge.weight;
                adjacency[[v, u]] += edge.weight;
            }
        }
    }
    ExpansionGraph { adjacency, provenance: (0..nv).map(NodeProvenance::Vertex).collect() }
}

/// Hyperedges as nodes, weighted by shared-vertex count: the zero-diagonal
/// projection `Z^T Z`.
pub fn line_graph(h: &Hypergraph) -> ExpansionGraph {
    let (z, _) = h.incidence();
    let mut adjacency = z.t().dot(&z);
    for i in 0..adjacency.nrows() {
        adjacency[[i, i]] = 0.0;
    }
    let provenance = (0..h.n_hyperedges()).map(NodeProvenance::Hyperedge).collect();
    ExpansionGraph { adjacency, provenance }
}

/// Unit-weight graph on incidence pairs, adjacent when they share the vertex
/// or the hyperedge.
pub fn line_expansion(h: &Hypergraph) -> ExpansionGraph {
    let mut provenance = Vec::new();
    for (e, edge) in h.hyperedges().iter().enumerate() {
        for &v in &edge.vertices {
            provenance.push(NodeProvenance::Incidence(v, e));
        }
    }
    let n = provenance.len();
    let mut adjacency = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            let (NodeProvenance::Incidence(vi, ei), NodeProvenance::Incidence(vj, ej)) =
                (&provenance[i], &provenance[j])
            else {
                unreachable!()
            };
            if vi == vj || ei == ej {
                adjacency[[i, j]] = 1.0;
                adjacency[[j, i]] = 1.0;
            }
        }
    }
    ExpansionGraph { adjacency, provenance }
}

/// Swap the roles of vertices and hyperedges (incidence transposes); the dual
/// hyperedge of vertex `v` collects the hyperedges containing `v`, keeping
/// unit weights. Vertices of degree zero produce no dual hyperedge.
pub fn dual(h: &Hypergraph) -> Hypergraph {
    let mut dual_edges: Vec<(Vec<usize>, f64)> = Vec::new();
    for v in 0..h.n_vertices() {
        let members: Vec<usize> = h
            .hyperedges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.vertices.contains(&v))
            .map(|(i, _)| i)
            .collect();
        if !members.is_empty() {
            dual_edges.push((members, 1.0));
        }
    }
    Hypergraph::new(h.n_hyperedges(), &dual_edges).expect("dual indices are in range")
}

/// Laplacian of an expansion graph: combinatorial `D - A`, or the symmetric
/// normalization `I - D^-1/2 A D^-1/2` with zero rows for isolated nodes.
pub fn expansion_laplacian(g: &ExpansionGraph, normalized: bool) -> Array2<f64> {
    let n = g.adjacency.nrows();
    let degrees: Vec<f64> = (0..n).map(|i| g.adjacency.row(i).sum()).collect();
    let mut l = Array2::<f64>::zeros((n, n));
    if normalized {
        for i in 0..n {
            if degrees[i] <= 0.0 {
                continue;
            }
            l[[i, i]] = 1.0;
            for j in 0..n {
                if i != j && degrees[j] > 0.0 {
                    l[[i, j]] = -g.adjacency[[i, j]] / (degrees[i] * degrees[j]).sqrt();
                }
            }
        }
    } else {
        for i in 0..n {
            l[[i, i]] = degrees[i];
            for j in 0..n {
                if i != j {
                    l[[i, j]] = -g.adjacency[[i, j]];
                }
            }
        }
    }
    l
}
