//! Dense complex Hermitian linear algebra.

mod decomp;
mod eig;
mod matrix;
mod ops;
mod shape;

pub use decomp::{determinant, qr_decompose};
pub use eig::{eigenvalues, hermitian_eig, Spectrum, MAX_SWEEPS};
pub use matrix::{ComplexMatrix, HermitianMatrix};
pub use ops::{
    interlacing_check, jordan_split, operator_abs, partial_trace, partial_transpose,
    partial_transpose_on, principal_submatrix, schur_product, trace_norm, InterlacingReport,
};
pub use shape::{BipartiteShape, Subsystem};

pub type C64 = num_complex::Complex64;

/// `|z|` through libm, so results do not depend on which float backend
/// `num-traits` was built with.
#[inline]
pub(crate) fn cabs(z: C64) -> f64 {
    libm::hypot(z.re, z.im)
}
