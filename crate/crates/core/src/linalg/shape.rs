use core::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Factorization `dim = dim_a * dim_b` of a bipartite Hilbert space.
///
/// Subsystem A is the first tensor factor: the composite index of
/// `|a⟩ ⊗ |b⟩` is `a * dim_b + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BipartiteShape {
    #[serde(rename = "dimA")]
    dim_a: usize,
    #[serde(rename = "dimB")]
    dim_b: usize,
}

impl BipartiteShape {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::Argument(alloc::format!(
                "subsystem dimensions must be positive, got {dim_a}x{dim_b}"
            )));
        }
        Ok(Self { dim_a, dim_b })
    }

    pub fn qubits() -> Self {
        Self { dim_a: 2, dim_b: 2 }
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension `dim_a * dim_b`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn swapped(&self) -> Self {
        Self { dim_a: self.dim_b, dim_b: self.dim_a }
    }

    pub fn is_square(&self) -> bool {
        self.dim_a == self.dim_b
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::shape(alloc::format!("dimension {} for shape {self}", self.dim()), dim));
        }
        Ok(())
    }
}

impl fmt::Display for BipartiteShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.dim_a, self.dim_b)
    }
}

/// Selects one tensor factor of a [`BipartiteShape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subsystem {
    #[default]
    A,
    B,
}
