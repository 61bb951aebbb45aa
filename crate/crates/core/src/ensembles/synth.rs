//! Synthesis of two-qubit states whose partial transpose has exactly one
//! negative eigenvalue with a prescribed eigenvector `α|00⟩ + β|11⟩`.

use rand::Rng;

use super::{ginibre, SampleStream};
use crate::analysis::{e1_bound, e2_bound};
use crate::linalg::{eigenvalues, partial_transpose, BipartiteShape, ComplexMatrix, HermitianMatrix, C64};
use crate::{DensityMatrix, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleNegativeParams {
    /// Range for the Schmidt ratio `k = α/β`; `k_min ≥ 1`.
    pub k_min: f64,
    pub k_max: f64,
    /// Draw `|E|` from `[e2_bound(k), e1_bound(k)]` instead of `(0, e1_bound(k)]`.
    pub lower_window: bool,
    pub max_attempts: usize,
}

impl SingleNegativeParams {
    pub fn ratio_window(lower_window: bool) -> Self {
        Self { k_min: 1.0, k_max: crate::analysis::max_schmidt_ratio(), lower_window, max_attempts: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingleNegativeInstance {
    pub state: DensityMatrix,
    pub k: f64,
    pub abs_e: f64,
    pub alpha: f64,
    pub beta: f64,
    pub attempts: usize,
}

/// Builds `ρᵀ = A − |Ψ⟩⟨Ψ|` with `|Ψ⟩ = α|00⟩ + β|11⟩`, `α² + β² = |E|`,
/// and `A = P G G† P` for a Ginibre `G` and `P` the projector onto `Ψ⊥`,
/// scaled so `tr A = 1 + |E|`. Draws are rejected until `ρ = (ρᵀ)ᵀ` is
/// positive definite.
pub fn single_negative_instance(params: &SingleNegativeParams, stream: &SampleStream) -> Result<SingleNegativeInstance> {
    if !(params.k_min >= 1.0 && params.k_max >= params.k_min) {
        return Err(Error::Argument(alloc::format!(
            "ratio range [{}, {}] must satisfy 1 <= k_min <= k_max",
            params.k_min, params.k_max
        )));
    }
    let mut rng = stream.rng();
    let shape = BipartiteShape::qubits();
    for attempt in 1..=params.max_attempts {
        let k = params.k_min + (params.k_max - params.k_min) * rng.random::<f64>();
        let upper = e1_bound(k)?;
        let lower = if params.lower_window { e2_bound(k)?.max(0.0) } else { 0.0 };
        let abs_e = lower + (upper - lower) * rng.random::<f64>();
        if abs_e <= 0.0 {
            continue;
        }
        let beta = (abs_e / (1.0 + k * k)).sqrt();
        let alpha = k * beta;

        let psi = [C64::new(alpha, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(beta, 0.0)];
        let unit: alloc::vec::Vec<C64> = psi.iter().map(|z| z / abs_e.sqrt()).collect();
        let projector = ComplexMatrix::identity(4).sub(HermitianMatrix::outer(&unit).as_matrix());
        let g = ginibre(4, 4, &mut rng);
        let gram = HermitianMatrix::from_matrix(g.matmul(&g.adjoint()))?;
        let a = gram.conjugate_by(&projector)?;
        let a = a.scale((1.0 + abs_e) / a.trace());

        let pt = a.sub(&HermitianMatrix::outer(&psi))?;
        let rho = partial_transpose(&pt, shape)?;
        if eigenvalues(&rho)?[0] <= 1e-12 {
            continue;
        }
        let rho = rho.scale(1.0 / rho.trace());
        return Ok(SingleNegativeInstance {
            state: DensityMatrix::new(rho, shape)?,
            k,
            abs_e,
            alpha,
            beta,
            attempts: attempt,
        });
    }
    Err(Error::Precondition(alloc::format!(
        "no positive state found in {} attempts",
        params.max_attempts
    )))
}
