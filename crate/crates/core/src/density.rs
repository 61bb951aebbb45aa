
use crate::linalg::{eigenvalues, BipartiteShape, HermitianMatrix};
use crate::{Error, Result, StateInvariant, DEFAULT_PSD_TOL, TRACE_TOL};

/// A bipartite density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DensityMatrix {
    #[serde(flatten)]
    matrix: HermitianMatrix,
    #[serde(flatten)]
    shape: BipartiteShape,
}

impl DensityMatrix {
    /// Validates trace (within [`TRACE_TOL`]) and positivity (minimum
    /// eigenvalue at least `-DEFAULT_PSD_TOL`).
    pub fn new(matrix: HermitianMatrix, shape: BipartiteShape) -> Result<Self> {
        Self::with_tolerance(matrix, shape, DEFAULT_PSD_TOL)
    }

    pub fn with_tolerance(matrix: HermitianMatrix, shape: BipartiteShape, psd_tol: f64) -> Result<Self> {
        if shape.dim() != matrix.dim() {
            return Err(Error::InvalidState {
                invariant: StateInvariant::Shape,
                margin: (shape.dim() as f64 - matrix.dim() as f64).abs(),
            });
        }
        let trace_err = matrix.trace() - 1.0;
        if !(trace_err.abs() <= TRACE_TOL) {
            return Err(Error::InvalidState { invariant: StateInvariant::Trace, margin: trace_err });
        }
        let min = eigenvalues(&matrix)?[0];
        if min < -psd_tol {
            return Err(Error::InvalidState { invariant: StateInvariant::PositiveSemidefinite, margin: min });
        }
        Ok(Self { matrix, shape })
    }

    /// For generators whose output is valid by construction.
    pub(crate) fn new_unchecked(matrix: HermitianMatrix, shape: BipartiteShape) -> Self {
        debug_assert_eq!(matrix.dim(), shape.dim());
        Self { matrix, shape }
    }

    /// Normalizes a positive semidefinite matrix to unit trace.
    pub(crate) fn from_unnormalized(matrix: HermitianMatrix, shape: BipartiteShape) -> Result<Self> {
        let tr = matrix.trace();
        if !(tr > f64::MIN_POSITIVE) || !tr.is_finite() {
            return Err(Error::Singular(alloc::format!("cannot normalize a matrix with trace {tr:e}")));
        }
        Ok(Self::new_unchecked(matrix.scale(1.0 / tr), shape))
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn into_parts(self) -> (HermitianMatrix, BipartiteShape) {
        (self.matrix, self.shape)
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        let m = self.matrix.as_matrix();
        m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_wrong_trace_with_margin() {
        let m = HermitianMatrix::identity(4).scale(0.225);
        match DensityMatrix::new(m, BipartiteShape::qubits()) {
            Err(Error::InvalidState { invariant: StateInvariant::Trace, margin }) => {
                assert!((margin + 0.1).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_indefinite_and_bad_shape() {
        let m = HermitianMatrix::from_real_diagonal(&[0.6, 0.6, -0.1, -0.1]);
        assert!(matches!(
            DensityMatrix::new(m, BipartiteShape::qubits()),
            Err(Error::InvalidState { invariant: StateInvariant::PositiveSemidefinite, .. })
        ));
        let m = HermitianMatrix::identity(3).scale(1.0 / 3.0);
        assert!(matches!(
            DensityMatrix::new(m, BipartiteShape::qubits()),
            Err(Error::InvalidState { invariant: StateInvariant::Shape, .. })
        ));
    }

    #[test]
    fn maximally_mixed_is_valid() {
        let rho = DensityMatrix::new(HermitianMatrix::identity(6).scale(1.0 / 6.0), BipartiteShape::new(2, 3).unwrap()).unwrap();
        assert!((rho.purity() - 1.0 / 6.0).abs() < 1e-15);
    }
}
