//! Signals indexed by simplices (or hypergraph vertices) in canonical order.

use ndarray::Array1;

use crate::error::{Error, Result};

/// A real-valued signal together with the simplex order it lives on.
/// Hypergraph vertex signals use order 0. Entry `i` refers to the `i`-th
/// simplex of that order in the canonical (lexicographic) indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub values: Array1<f64>,
    pub order: usize,
}

impl Signal {
    pub fn new(values: Array1<f64>, order: usize) -> Self {
        Self { values, order }
    }

    pub fn node(values: Array1<f64>) -> Self {
        Self::new(values, 0)
    }

    pub fn edge(values: Array1<f64>) -> Self {
        Self::new(values, 1)
    }

    pub fn triangle(values: Array1<f64>) -> Self {
        Self::new(values, 2)
    }

    pub fn from_vec(values: Vec<f64>, order: usize) -> Self {
        Self::new(Array1::from(values), order)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.values.dot(&self.values).sqrt()
    }

    /// Check the signal against the expected domain size and order.
    pub fn expect(&self, order: usize, len: usize) -> Result<()> {
        if self.order != order {
            return Err(Error::InvalidParameter {
                name: "signal.order",
                reason: format!("expected order {order}, got {}", self.order),
            });
        }
        if self.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: self.len() });
        }
        Ok(())
    }
}
