//! Determinant test for at most one negative eigenvalue of a canonical
//! two-qubit partial transpose.
//!
//! If some 3×3 principal submatrix of `ρᵀ` is positive semidefinite,
//! interlacing leaves room for at most one negative eigenvalue. The two
//! candidate blocks keep rows `{0,1,2}` and `{0,1,3}`; their determinants
//! differ from the matching blocks of `ρ` by
//!
//! ```text
//! Det(A₁) − Det(A₁ᵀ) = 2AB·Re(β − α) + a11(|α|² − |β|²)
//! Det(A₂) − Det(A₂ᵀ) = 2AB·Re(β − α) + a22(|β|² − |α|²)
//! ```
//!
//! so when `AB = 0` or `Re α = Re β` one of the gaps is non-positive.

use serde::Serialize;

use super::canonical::CanonicalForm2Q;
use crate::linalg::{determinant, eigenvalues, partial_transpose, principal_submatrix, HermitianMatrix};
use crate::{BipartiteShape, Error, Result};

pub const FIRST_BLOCK: [usize; 3] = [0, 1, 2];
pub const SECOND_BLOCK: [usize; 3] = [0, 1, 3];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub applicable: bool,
    /// `AB = 0` within tolerance.
    pub couplings_vanish: bool,
    /// `Re α = Re β` within tolerance.
    pub real_parts_equal: bool,
    /// `Det(A₁) − Det(A₁ᵀ)` from the closed form and from LU determinants.
    pub first_gap_closed: f64,
    pub first_gap_direct: f64,
    pub second_gap_closed: f64,
    pub second_gap_direct: f64,
    /// The closed forms with the `AB` term dropped.
    pub first_gap_reduced: f64,
    pub second_gap_reduced: f64,
    pub first_block_min_eig: f64,
    pub second_block_min_eig: f64,
    pub some_block_psd: bool,
    /// Negative eigenvalues of the partial transpose of the canonical matrix.
    pub negative_count: usize,
    pub tolerance: f64,
}

fn coupling_term(form: &CanonicalForm2Q) -> f64 {
    2.0 * form.coupling_a * form.coupling_b * (form.beta.re - form.alpha.re)
}

/// `Det(A₁) − Det(A₁ᵀ)`.
pub fn first_gap_closed(form: &CanonicalForm2Q) -> f64 {
    coupling_term(form) + form.a11 * (form.alpha.norm_sqr() - form.beta.norm_sqr())
}

/// `Det(A₂) − Det(A₂ᵀ)`.
pub fn second_gap_closed(form: &CanonicalForm2Q) -> f64 {
    coupling_term(form) + form.a22 * (form.beta.norm_sqr() - form.alpha.norm_sqr())
}

fn block_det(h: &HermitianMatrix, block: &[usize]) -> Result<f64> {
    Ok(determinant(principal_submatrix(h, block)?.as_matrix())?.re)
}

/// Evaluates the determinant conditions on a canonical form. When they
/// apply, a positive semidefinite block and at most one negative eigenvalue
/// are required; anything else is returned as [`Error::Breach`].
pub fn theorem2_check(form: &CanonicalForm2Q, tol: f64) -> Result<Theorem2Report> {
    if !(form.residual <= tol) {
        return Err(Error::Precondition(alloc::format!(
            "canonical form residual {:e} exceeds tolerance {tol:e}",
            form.residual
        )));
    }
    let rho = form.ideal_matrix();
    let pt = partial_transpose(&rho, BipartiteShape::qubits())?;

    let first_gap_direct = block_det(&rho, &FIRST_BLOCK)? - block_det(&pt, &FIRST_BLOCK)?;
    let second_gap_direct = block_det(&rho, &SECOND_BLOCK)? - block_det(&pt, &SECOND_BLOCK)?;
    let mod_diff = form.alpha.norm_sqr() - form.beta.norm_sqr();

    let couplings_vanish = (form.coupling_a * form.coupling_b).abs() <= tol;
    let real_parts_equal = (form.alpha.re - form.beta.re).abs() <= tol;
    let applicable = couplings_vanish || real_parts_equal;

    let first_block_min_eig = eigenvalues(&principal_submatrix(&pt, &FIRST_BLOCK)?)?[0];
    let second_block_min_eig = eigenvalues(&principal_submatrix(&pt, &SECOND_BLOCK)?)?[0];
    let some_block_psd = first_block_min_eig >= -tol || second_block_min_eig >= -tol;
    let negative_count = eigenvalues(&pt)?.iter().take_while(|&&l| l < -tol).count();

    if applicable && (!some_block_psd || negative_count > 1) {
        return Err(Error::Breach(alloc::format!(
            "determinant conditions hold but block minima are {first_block_min_eig:e}, {second_block_min_eig:e} \
             and {negative_count} eigenvalues are negative"
        )));
    }

    Ok(Theorem2Report {
        applicable,
        couplings_vanish,
        real_parts_equal,
        first_gap_closed: first_gap_closed(form),
        first_gap_direct,
        second_gap_closed: second_gap_closed(form),
        second_gap_direct,
        first_gap_reduced: form.a11 * mod_diff,
        second_gap_reduced: -form.a22 * mod_diff,
        first_block_min_eig,
        second_block_min_eig,
        some_block_psd,
        negative_count,
        tolerance: tol,
    })
}
