//! Partial-transpose spectra of bipartite quantum states.
//!
//! The crate is `no_std` and only needs `alloc`. It provides dense complex
//! Hermitian linear algebra ([`linalg`]), seeded random-state ensembles
//! ([`ensembles`]) and the spectral analyses built on top of them
//! ([`analysis`]): negative-eigenvalue census of the partial transpose,
//! two-qubit canonical forms, and the determinant/Schur-product machinery
//! behind the `|ρᵀ|ᵀ ≥ 0` sufficient conditions.
//!
//! File formats, the Monte Carlo sweep harness and the command line live in
//! the companion `ptspec` crate.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod density;
pub mod ensembles;
mod error;
pub mod linalg;

pub use density::DensityMatrix;
pub use error::{Error, Result, StateInvariant};
pub use linalg::{BipartiteShape, ComplexMatrix, HermitianMatrix, Spectrum, Subsystem, C64};

/// Absolute slack used when checking positive semidefiniteness.
pub const DEFAULT_PSD_TOL: f64 = 1e-10;
/// Slack for eigenvalue interlacing checks.
pub const DEFAULT_INTERLACING_TOL: f64 = 1e-9;
/// An eigenvalue counts as negative iff it is below `-DEFAULT_NEGATIVE_TOL`.
pub const DEFAULT_NEGATIVE_TOL: f64 = 1e-10;
/// Allowed deviation of a density matrix trace from one.
pub const TRACE_TOL: f64 = 1e-12;
