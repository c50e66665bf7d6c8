//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for {n_vertices} vertices")]
    VertexOutOfRange { index: usize, n_vertices: usize },

    #[error("facet {position} is empty")]
    EmptyFacet { position: usize },

    #[error("simplex order {k} out of range for complex of top order {top}")]
    OrderOutOfRange { k: usize, top: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric (max |a_ij - a_ji| = {0:.3e})")]
    NotSymmetric(f64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("all points are collinear; no triangulation exists")]
    CollinearPoints,

    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("vertices {0} and {1} are not adjacent in the complex")]
    NotAdjacent(usize, usize),

    #[error("signal is zero")]
    ZeroSignal,

    #[error("step size mu = {mu} outside stable range (0, {limit:.6})")]
    UnstableStep { mu: f64, limit: f64 },

    #[error("parameter {name} invalid: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("linear system is singular or not positive definite")]
    SingularSystem,

    #[error("a connected component has no labeled entries")]
    UnlabeledComponent,

    #[error("harmonic space is empty")]
    EmptyHarmonicSpace,

    #[error("label index {index} out of range ({len} entries) or duplicated")]
    BadLabel { index: usize, len: usize },

    #[error("hypergraph is not uniform (hyperedge cardinalities differ)")]
    NonUniform,

    #[error("hyperedge {position} has non-positive weight {weight}")]
    BadWeight { position: usize, weight: f64 },

    #[error("hyperedge {position} is empty")]
    EmptyHyperedge { position: usize },

    #[error("tensor does not match the requested construction for this hypergraph")]
    TensorMismatch,

    #[error("entry-wise {power}-th root is ambiguous: coefficient {index} is negative with no stored sign")]
    AmbiguousRoot { index: usize, power: usize },

    #[error("activation is not odd: |sigma(-x) + sigma(x)| = {deviation:.3e} at x = {at}")]
    NotOdd { deviation: f64, at: f64 },

    #[error("solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    EigNonConvergence { sweeps: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed file {path}: {reason}")]
    Malformed { path: String, reason: String },
}

impl Error {
    /// True for failures of the numerics (as opposed to bad user input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularSystem
                | Error::NonConvergence { .. }
                | Error::EigNonConvergence { .. }
                | Error::AmbiguousRoot { .. }
        )
    }
}
