use alloc::vec::Vec;

use serde::Serialize;

use crate::linalg::{eigenvalues, operator_abs, partial_transpose, trace_norm, BipartiteShape, HermitianMatrix};
use crate::{DensityMatrix, Error, Result};

/// Negative-eigenvalue census of `ρᵀ` (transpose on subsystem A).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NegativeSpectrumReport {
    pub shape: BipartiteShape,
    /// Eigenvalues of the partial transpose, increasing.
    pub eigenvalues: Vec<f64>,
    /// `#{λ : λ < −tolerance_used}`.
    pub negative_count: usize,
    /// Smallest eigenvalue; the negative eigenvalue `E` when the count is one.
    pub most_negative: f64,
    /// `Σ_{λ<0} |λ|`.
    pub negativity: f64,
    pub theorem1_bound: usize,
    /// `n(n−1)/2` for square shapes.
    pub conjecture_bound: Option<usize>,
    pub tolerance_used: f64,
    /// Count at `tolerance_used / 10`.
    pub count_at_tighter_tol: usize,
    /// Count at `tolerance_used * 10`.
    pub count_at_looser_tol: usize,
}

impl NegativeSpectrumReport {
    pub fn within_theorem1_bound(&self) -> bool {
        self.negative_count <= self.theorem1_bound
    }

    pub fn within_conjecture_bound(&self) -> bool {
        self.conjecture_bound.is_none_or(|b| self.negative_count <= b)
    }
}

fn count_below(values: &[f64], tol: f64) -> usize {
    values.iter().take_while(|&&l| l < -tol).count()
}

/// Eigenvalues of the partial transpose of `rho` and their negative census.
pub fn count_negative(rho: &DensityMatrix, tol: f64) -> Result<NegativeSpectrumReport> {
    if !(tol > 0.0) {
        return Err(Error::Argument(alloc::format!("tolerance must be positive, got {tol}")));
    }
    let shape = rho.shape();
    let pt = partial_transpose(rho.matrix(), shape)?;
    let eigenvalues = eigenvalues(&pt)?;
    Ok(report_from_eigenvalues(shape, eigenvalues, tol))
}

/// Assembles a report from precomputed, increasing eigenvalues of `ρᵀ`.
pub fn report_from_eigenvalues(shape: BipartiteShape, eigenvalues: Vec<f64>, tol: f64) -> NegativeSpectrumReport {
    let negative_count = count_below(&eigenvalues, tol);
    let negativity = eigenvalues.iter().filter(|&&l| l < 0.0).fold(0.0, |acc, l| acc - l);
    NegativeSpectrumReport {
        shape,
        most_negative: eigenvalues[0],
        negative_count,
        negativity,
        theorem1_bound: theorem1_bound(shape),
        conjecture_bound: shape.is_square().then(|| conjecture_bound(shape.dim_a())),
        tolerance_used: tol,
        count_at_tighter_tol: count_below(&eigenvalues, tol / 10.0),
        count_at_looser_tol: count_below(&eigenvalues, tol * 10.0),
        eigenvalues,
    }
}

/// Upper bound `MN − max(M, N)` on the number of negative eigenvalues of the
/// partial transpose of any `M × N` state.
pub fn theorem1_bound(shape: BipartiteShape) -> usize {
    shape.dim() - shape.dim_a().max(shape.dim_b())
}

/// Conjectured bound `n(n−1)/2` for `n × n` states.
pub fn conjecture_bound(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `(‖ρᵀ‖₁ − 1)/2`.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho.matrix(), rho.shape())?;
    Ok((trace_norm(&pt)? - 1.0) / 2.0)
}

/// `|ρᵀ|ᵀ` and its smallest eigenvalue.
pub fn abs_pt_pt(rho: &DensityMatrix) -> Result<(HermitianMatrix, f64)> {
    let shape = rho.shape();
    let pt = partial_transpose(rho.matrix(), shape)?;
    let back = partial_transpose(&operator_abs(&pt)?, shape)?;
    let min = eigenvalues(&back)?[0];
    Ok((back, min))
}
