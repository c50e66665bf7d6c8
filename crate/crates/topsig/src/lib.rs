//! Signal processing on higher-order networks.
//!
//! The crate covers two families of higher-order models and the signal
//! processing machinery built on top of them:
//!
//! * **Simplicial complexes** — oriented simplices with boundary operators,
//!   Hodge Laplacians, the Hodge decomposition of edge flows, filtering,
//!   denoising and interpolation of node/edge signals, harmonic trajectory
//!   embeddings, and forward passes of simplicial neural layers.
//! * **Hypergraphs** — incidence matrices and the classical matrix expansions
//!   (star, clique, line graph, line expansion, dual), adjacency/Laplacian
//!   tensors, the tensor shift, symmetric CP decomposition, the hypergraph
//!   Fourier transform, and regularized denoising/interpolation.
//!
//! All operations are pure functions over immutable inputs and are
//! deterministic: the eigensolver uses a fixed sweep order, randomized
//! routines take explicit 64-bit seeds, and every solver documents its
//! tolerances.

pub mod complex;
pub mod delaunay;
pub mod error;
pub mod flow;
pub mod hg_learn;
pub mod hodge;
pub mod hypergraph;
pub mod io;
pub mod linalg;
pub mod plot;
pub mod rng;
pub mod signal;
pub mod snn;
pub mod spectral;
pub mod tensor;
pub mod testing;

pub use complex::{BoundaryMatrix, SimplicialComplex, Violation};
pub use error::{Error, Result};
pub use hodge::HodgeDecomposition;
pub use hypergraph::{ExpansionGraph, Hypergraph};
pub use signal::Signal;
pub use spectral::SpectralBasis;
pub use tensor::{HgFourierBasis, SymTensor};
