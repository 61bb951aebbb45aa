//! Sufficient conditions for `|ρᵀ|ᵀ ≥ 0` on two qubits whose partial
//! transpose has a single negative eigenvalue `E`.
//!
//! Write `ρᵀ = A − ρ₋` with `ρ₋ = |Ψ⟩⟨Ψ|`, `|Ψ⟩ = α|00⟩ + β|11⟩` after local
//! unitaries (`α ≥ β ≥ 0`, `α² + β² = |E|`), `A ≥ 0` of rank three and
//! `Aρ₋ = 0`. Then `|ρᵀ| = A + ρ₋` and `|ρᵀ|ᵀ = ρ ∘ S` for a matrix `S` that
//! depends only on `μ = α²`, `ν = β²` and `A₁₁ = ⟨00|A|00⟩`. By the Schur
//! product theorem `S ≥ 0` is enough.

use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use serde::Serialize;

use crate::linalg::{
    cabs, determinant, hermitian_eig, eigenvalues, partial_transpose, principal_submatrix, ComplexMatrix, HermitianMatrix, C64,
};
use crate::{BipartiteShape, DensityMatrix, Error, Result, DEFAULT_NEGATIVE_TOL};

/// Slack on the ratio window and on the annihilation check `Aρ₋ = 0`.
pub const RATIO_TOL: f64 = 1e-12;
pub const ANNIHILATION_TOL: f64 = 1e-9;
/// Required gap between the negative eigenvalue and the next one.
pub const SIMPLE_GAP: f64 = 1e-8;
/// `β` below this counts as zero (product eigenvector).
pub const PRODUCT_TOL: f64 = 1e-12;
/// Minimum eigenvalue of `|ρᵀ|ᵀ` allowed when a sufficient condition holds.
pub const GUARANTEE_TOL: f64 = 1e-9;

/// Upper end `√(√2 + 1)` of the Schmidt-ratio window.
pub fn max_schmidt_ratio() -> f64 {
    (SQRT_2 + 1.0).sqrt()
}

fn check_ratio(k: f64) -> Result<()> {
    if !(k >= 1.0) || !k.is_finite() {
        return Err(Error::Argument(alloc::format!("Schmidt ratio must be finite and at least 1, got {k}")));
    }
    Ok(())
}

fn guarded_div(num: f64, den: f64, what: &str) -> Result<f64> {
    if den.abs() < 1e-12 {
        return Err(Error::Singular(alloc::format!("{what}: denominator {den:e}")));
    }
    Ok(num / den)
}

/// Largest `|E|` compatible with `ρ ≥ 0`: `(1+k²)/(k²(k+1)² − (k−1)²)`.
pub fn e1_bound(k: f64) -> Result<f64> {
    check_ratio(k)?;
    let k2 = k * k;
    guarded_div(1.0 + k2, k2 * (k + 1.0).powi(2) - (k - 1.0).powi(2), "upper eigenvalue bound")
}

/// Smallest `|E|` for which `ρ ≥ 0` already forces `S ≥ 0`:
/// `(1+k²)(k−1)²/(2k² − (k−1)⁴)`.
pub fn e2_bound(k: f64) -> Result<f64> {
    check_ratio(k)?;
    let k2 = k * k;
    let d = (k - 1.0).powi(2);
    guarded_div((1.0 + k2) * d, 2.0 * k2 - d * d, "lower eigenvalue bound")
}

/// The Schur multiplier `S` with `|ρᵀ|ᵀ = ρ ∘ S`:
///
/// ```text
/// S00 = (A11 + μ)/(A11 − μ)
/// S12 = S21 = (A11 − ν)/(A11 + ν)
/// S33 = (A11 + ν²/μ)/(A11 − ν²/μ)
/// ```
///
/// every other entry 1.
pub fn s_matrix(mu: f64, nu: f64, a11: f64) -> Result<HermitianMatrix> {
    if !(mu > 0.0) {
        return Err(Error::Argument(alloc::format!("μ must be positive, got {mu}")));
    }
    let corner = nu * nu / mu;
    let s00 = guarded_div(a11 + mu, a11 - mu, "S[0][0]")?;
    let s12 = guarded_div(a11 - nu, a11 + nu, "S[1][2]")?;
    let s33 = guarded_div(a11 + corner, a11 - corner, "S[3][3]")?;
    let mut m = ComplexMatrix::from_fn(4, 4, |_, _| C64::new(1.0, 0.0));
    m[(0, 0)] = C64::new(s00, 0.0);
    m[(1, 2)] = C64::new(s12, 0.0);
    m[(2, 1)] = C64::new(s12, 0.0);
    m[(3, 3)] = C64::new(s33, 0.0);
    HermitianMatrix::from_matrix(m)
}

/// Closed forms for the determinants of the leading 3×3 block of `S` and of
/// `S` itself:
///
/// ```text
/// det S₃ = 4ν[(2μ − ν)A11 + μν] / ((A11 − μ)(A11 + ν)²)
/// det S  = −8ν²[(μ − ν)²A11 − 2μν²] / ((A11 − μ)(A11 + ν)²(μA11 − ν²))
/// ```
///
/// Requires `A11 > μ ≥ ν > 0` and `μA11 > ν²`.
pub fn s_matrix_dets(mu: f64, nu: f64, a11: f64) -> Result<(f64, f64)> {
    if !(a11 > mu && mu >= nu && nu > 0.0 && mu * a11 > nu * nu) {
        return Err(Error::Argument(alloc::format!(
            "need A11 > μ ≥ ν > 0 and μ·A11 > ν², got μ = {mu}, ν = {nu}, A11 = {a11}"
        )));
    }
    let base = (a11 - mu) * (a11 + nu).powi(2);
    let det3 = guarded_div(4.0 * nu * ((2.0 * mu - nu) * a11 + mu * nu), base, "det S3")?;
    let det4 = guarded_div(
        -8.0 * nu * nu * ((mu - nu).powi(2) * a11 - 2.0 * mu * nu * nu),
        base * (mu * a11 - nu * nu),
        "det S",
    )?;
    Ok((det3, det4))
}

/// For `M' = M + 2μ·|0⟩⟨0|`, returns `(Det M' − Det M, 2μ·Det M[1..])`; the
/// two agree for any square `M` because the determinant is linear in one
/// diagonal entry.
pub fn corner_bump_determinant_gap(m: &HermitianMatrix, mu: f64) -> Result<(f64, f64)> {
    let n = m.dim();
    if n < 2 {
        return Err(Error::Argument("need at least a 2x2 matrix".into()));
    }
    let mut bumped = m.as_matrix().clone();
    bumped[(0, 0)] += C64::new(2.0 * mu, 0.0);
    let lhs = determinant(&bumped)?.re - determinant(m.as_matrix())?.re;
    let rest: Vec<usize> = (1..n).collect();
    let rhs = 2.0 * mu * determinant(principal_submatrix(m, &rest)?.as_matrix())?.re;
    Ok((lhs, rhs))
}

/// Inequalities on `(A11, α, β)` implied by `ρ ≥ 0`, and the one that makes
/// `det S ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParameterConstraints {
    /// `A11 ≥ α²`.
    pub a11_at_least_mu: bool,
    /// `A11 ≥ β⁴/α²`.
    pub a11_at_least_corner: bool,
    /// `((α+β)/β)²·A11 ≤ 1 + (α−β)²`, from the trace budget.
    pub trace_budget: bool,
    /// `A11 ≤ 2μν²/(μ−ν)²`, equivalent to `det S ≥ 0`.
    pub det_s_nonnegative: bool,
    /// `e2_bound(k) ≤ |E| ≤ e1_bound(k)`.
    pub eigenvalue_window: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem3Report {
    /// Exactly one eigenvalue of `ρᵀ` below `−tolerance`, separated from the
    /// next by more than [`SIMPLE_GAP`].
    pub applicable: bool,
    pub near_degenerate: bool,
    pub negative_count: usize,
    pub eigenvalues: Vec<f64>,
    pub negativity: f64,
    /// Smallest eigenvalue of `|ρᵀ|ᵀ`, computed for every input.
    pub abs_pt_pt_min_eig: f64,

    pub e: Option<f64>,
    /// `√|E|`, reported next to `negativity` for comparison only.
    pub sqrt_abs_e: Option<f64>,
    pub schmidt_alpha: Option<f64>,
    pub schmidt_beta: Option<f64>,
    /// `α/β`; absent when `β = 0`.
    pub k: Option<f64>,
    pub a11: Option<f64>,
    pub e1: Option<f64>,
    pub e2: Option<f64>,
    pub s: Option<HermitianMatrix>,
    pub s_min_eig: Option<f64>,
    pub s_psd: Option<bool>,
    /// `αβ = 0`.
    pub product_eigenvector: bool,
    /// `1 ≤ α/β ≤ √(√2+1)`.
    pub ratio_in_window: bool,
    pub constraints: Option<ParameterConstraints>,
    /// `‖A ρ₋‖_F` in the rotated frame.
    pub annihilation_residual: Option<f64>,
    /// Largest entry of `ρ ∘ S − |ρᵀ|ᵀ` in the rotated frame.
    pub schur_residual: Option<f64>,
    /// `(Det|ρᵀ|ᵀ − Det ρ, 2α²·Det ρ[1..])` when `β = 0`.
    pub corner_identity: Option<(f64, f64)>,
    /// Local unitaries `(U, V)` taking the negative eigenvector to `α|00⟩ + β|11⟩`.
    pub local_unitaries: Option<(ComplexMatrix, ComplexMatrix)>,
    pub tolerance: f64,
}

/// Schmidt decomposition of a two-qubit unit vector: `(U, V, [s0, s1])` with
/// `(U ⊗ V)v = s0|00⟩ + s1|11⟩`, `s0 ≥ s1 ≥ 0`.
fn schmidt_two_qubit(v: &[C64]) -> Result<(ComplexMatrix, ComplexMatrix, [f64; 2])> {
    let c = ComplexMatrix::new(2, 2, v.to_vec())?;
    let gram = HermitianMatrix::from_matrix(c.matmul(&c.adjoint()))?;
    let spec = hermitian_eig(&gram)?;
    // descending singular values
    let w = [spec.eigenvector(1), spec.eigenvector(0)];
    let s = [spec.eigenvalues[1].max(0.0).sqrt(), spec.eigenvalues[0].max(0.0).sqrt()];
    let c_adj = c.adjoint();
    let x0: Vec<C64> = c_adj.mul_vec(&w[0]).iter().map(|z| z / s[0]).collect();
    let x1: Vec<C64> = if s[1] > 1e-14 {
        c_adj.mul_vec(&w[1]).iter().map(|z| z / s[1]).collect()
    } else {
        alloc::vec![-x0[1].conj(), x0[0].conj()]
    };
    let u = ComplexMatrix::from_fn(2, 2, |r, col| w[r][col].conj());
    let v = ComplexMatrix::from_fn(2, 2, |r, col| if r == 0 { x0[col] } else { x1[col] });
    Ok((u, v, s))
}

/// Runs the full single-negative-eigenvalue analysis with the default tolerance.
pub fn theorem3_analyze(rho: &DensityMatrix) -> Result<Theorem3Report> {
    theorem3_analyze_with(rho, DEFAULT_NEGATIVE_TOL)
}

pub fn theorem3_analyze_with(rho: &DensityMatrix, tol: f64) -> Result<Theorem3Report> {
    let shape = BipartiteShape::qubits();
    if rho.shape() != shape {
        return Err(Error::Argument(alloc::format!("single-negative analysis needs a 2x2 state, got {}", rho.shape())));
    }
    let pt = partial_transpose(rho.matrix(), shape)?;
    let spectrum = hermitian_eig(&pt)?;
    let ev = spectrum.eigenvalues.clone();
    let negative_count = ev.iter().take_while(|&&l| l < -tol).count();
    let negativity = ev.iter().filter(|&&l| l < 0.0).fold(0.0, |acc, l| acc - l);
    let abs_pt_pt = partial_transpose(&spectrum.reconstruct(f64::abs), shape)?;
    let abs_pt_pt_min_eig = eigenvalues(&abs_pt_pt)?[0];
    let near_degenerate = negative_count == 1 && ev[1] - ev[0] <= SIMPLE_GAP;

    let mut report = Theorem3Report {
        applicable: negative_count == 1 && !near_degenerate,
        near_degenerate,
        negative_count,
        eigenvalues: ev.clone(),
        negativity,
        abs_pt_pt_min_eig,
        e: None,
        sqrt_abs_e: None,
        schmidt_alpha: None,
        schmidt_beta: None,
        k: None,
        a11: None,
        e1: None,
        e2: None,
        s: None,
        s_min_eig: None,
        s_psd: None,
        product_eigenvector: false,
        ratio_in_window: false,
        constraints: None,
        annihilation_residual: None,
        schur_residual: None,
        corner_identity: None,
        local_unitaries: None,
        tolerance: tol,
    };
    if !report.applicable {
        return Ok(report);
    }

    let e = ev[0];
    let abs_e = -e;
    let (u, v, s) = schmidt_two_qubit(&spectrum.eigenvector(0))?;
    let alpha = abs_e.sqrt() * s[0];
    let beta = abs_e.sqrt() * s[1];
    let local = u.kron(&v);
    let pt_rot = pt.conjugate_by(&local)?;
    let psi = [C64::new(alpha, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(beta, 0.0)];
    let rho_minus = HermitianMatrix::outer(&psi);
    let a = pt_rot.add(&rho_minus)?;
    let a11 = a.get(0, 0).re;
    let annihilation = a.as_matrix().matmul(rho_minus.as_matrix()).frobenius_norm();
    let rho_rot = partial_transpose(&pt_rot, shape)?;
    let abs_rot = partial_transpose(&a.add(&rho_minus)?, shape)?;

    report.e = Some(e);
    report.sqrt_abs_e = Some(abs_e.sqrt());
    report.schmidt_alpha = Some(alpha);
    report.schmidt_beta = Some(beta);
    report.a11 = Some(a11);
    report.annihilation_residual = Some(annihilation);
    report.local_unitaries = Some((u, v));

    let (mu, nu) = (alpha * alpha, beta * beta);
    if beta <= PRODUCT_TOL {
        report.product_eigenvector = true;
        let lhs = determinant(abs_rot.as_matrix())?.re - determinant(rho_rot.as_matrix())?.re;
        let rest = principal_submatrix(&rho_rot, &[1, 2, 3])?;
        let rhs = 2.0 * mu * determinant(rest.as_matrix())?.re;
        report.corner_identity = Some((lhs, rhs));
    } else {
        let k = alpha / beta;
        report.k = Some(k);
        report.ratio_in_window = k >= 1.0 - RATIO_TOL && k <= max_schmidt_ratio() + RATIO_TOL;
        let k_eval = k.max(1.0);
        report.e1 = e1_bound(k_eval).ok();
        report.e2 = e2_bound(k_eval).ok();
        if let Ok(s_mat) = s_matrix(mu, nu, a11) {
            let s_min = eigenvalues(&s_mat)?[0];
            let scale = s_mat.as_matrix().as_slice().iter().map(|&z| cabs(z)).fold(1.0, f64::max);
            let product = crate::linalg::schur_product(&rho_rot, &s_mat)?;
            report.schur_residual = Some(product.max_abs_diff(&abs_rot));
            report.s_min_eig = Some(s_min);
            report.s_psd = Some(s_min >= -GUARANTEE_TOL * scale);
            report.s = Some(s_mat);
        }
        let det_s_bound = if mu > nu { 2.0 * mu * nu * nu / (mu - nu).powi(2) } else { f64::INFINITY };
        report.constraints = Some(ParameterConstraints {
            a11_at_least_mu: a11 >= mu - tol,
            a11_at_least_corner: a11 >= nu * nu / mu - tol,
            trace_budget: ((alpha + beta) / beta).powi(2) * a11 <= 1.0 + (alpha - beta).powi(2) + tol,
            det_s_nonnegative: a11 <= det_s_bound + tol,
            eigenvalue_window: match (report.e1, report.e2) {
                (Some(e1), Some(e2)) => e2 - tol <= abs_e && abs_e <= e1 + tol,
                _ => false,
            },
        });
    }

    if (report.product_eigenvector || report.ratio_in_window) && abs_pt_pt_min_eig < -GUARANTEE_TOL {
        return Err(Error::Breach(alloc::format!(
            "sufficient condition holds but |ρᵀ|ᵀ has eigenvalue {abs_pt_pt_min_eig:e}"
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{maximally_entangled, werner_state};

    #[test]
    fn bound_values_at_unit_ratio() {
        assert!((e1_bound(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(e2_bound(1.0).unwrap(), 0.0);
        assert!(e1_bound(0.9).is_err());
        assert!(e2_bound(f64::NAN).is_err());
    }

    #[test]
    fn bounds_meet_at_window_edge() {
        let k = max_schmidt_ratio();
        let (e1, e2) = (e1_bound(k).unwrap(), e2_bound(k).unwrap());
        assert!((e1 - e2).abs() < 1e-12, "{e1} vs {e2}");
    }

    #[test]
    fn s_dets_preconditions() {
        assert!(s_matrix_dets(0.1, 0.2, 0.5).is_err());
        assert!(s_matrix_dets(0.1, 0.05, 0.05).is_err());
        assert!(s_matrix_dets(0.1, 0.0, 0.5).is_err());
        assert!(s_matrix(0.0, 0.0, 0.5).is_err());
        assert!(matches!(s_matrix(0.1, 0.05, 0.1), Err(Error::Singular(_))));
    }

    #[test]
    fn bell_projector_pipeline() {
        let r = theorem3_analyze(&maximally_entangled(2).unwrap()).unwrap();
        assert!(r.applicable);
        assert!((r.k.unwrap() - 1.0).abs() < 1e-12);
        assert!(r.ratio_in_window);
        assert!(r.abs_pt_pt_min_eig >= -1e-10);
        let (a, b) = (r.schmidt_alpha.unwrap(), r.schmidt_beta.unwrap());
        assert!((a * a + b * b - 0.5).abs() < 1e-12);
        assert!(r.annihilation_residual.unwrap() < ANNIHILATION_TOL);
        // A11 = μ = 1/4 here, so S has a pole
        assert!((r.a11.unwrap() - 0.25).abs() < 1e-12);
        assert!(r.s.is_none());
    }

    #[test]
    fn werner_pipeline() {
        // ρᵀ has E = (1 − 3p)/4 and ⟨00|A|00⟩ = (1 − p)/4 + |E|/2
        let p = 0.8;
        let r = theorem3_analyze(&werner_state(p).unwrap()).unwrap();
        assert!(r.applicable);
        assert!((r.e.unwrap() - (1.0 - 3.0 * p) / 4.0).abs() < 1e-12);
        assert!((r.a11.unwrap() - ((1.0 - p) / 4.0 + 0.35 / 2.0)).abs() < 1e-12);
        assert!(r.ratio_in_window);
        assert_eq!(r.s_psd, Some(true));
        assert!(r.schur_residual.unwrap() < 1e-12);
        let c = r.constraints.unwrap();
        assert!(c.a11_at_least_mu && c.a11_at_least_corner && c.trace_budget && c.det_s_nonnegative);
    }

    #[test]
    fn ppt_state_is_not_applicable() {
        let r = theorem3_analyze(&werner_state(0.2).unwrap()).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.negative_count, 0);
        assert!(r.e.is_none() && r.s.is_none());
        assert!(r.abs_pt_pt_min_eig >= -1e-10);
    }

    #[test]
    fn corner_gap_identity_on_a_fixed_matrix() {
        let h = HermitianMatrix::from_parts(
            3,
            &[0.5, 0.1, 0.0, 0.1, 0.3, 0.05, 0.0, 0.05, 0.2],
            &[0.0, 0.02, 0.01, -0.02, 0.0, 0.0, -0.01, 0.0, 0.0],
        )
        .unwrap();
        let (lhs, rhs) = corner_bump_determinant_gap(&h, 0.07).unwrap();
        assert!((lhs - rhs).abs() < 1e-15);
    }
}
