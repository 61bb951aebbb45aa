use alloc::vec::Vec;

use num_traits::Zero;

use super::{ComplexMatrix, HermitianMatrix, C64};
use crate::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration. Convergence is quadratic, so
/// well-conditioned inputs of a few hundred rows finish in roughly ten sweeps.
pub const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted in increasing order; column `k` of `eigenvectors`
/// is the unit eigenvector paired with `eigenvalues[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    /// `Σ f(λₖ) vₖvₖ†`.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let m = ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * weights[k]).sum()
        });
        HermitianMatrix::symmetrized(m)
    }
}

/// Full eigendecomposition by cyclic complex Jacobi rotations.
pub fn hermitian_eig(h: &HermitianMatrix) -> Result<Spectrum> {
    let (values, vectors) = jacobi(h, true)?;
    let vectors = vectors.expect("vectors requested");
    let order = sorted_order(&values);
    let n = h.dim();
    let eigenvalues = order.iter().map(|&k| values[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Eigenvalues only, in increasing order.
pub fn eigenvalues(h: &HermitianMatrix) -> Result<Vec<f64>> {
    let (mut values, _) = jacobi(h, false)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn sorted_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    order
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[i * n + j].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

fn jacobi(h: &HermitianMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = h.dim();
    let mut a: Vec<C64> = h.as_matrix().as_slice().to_vec();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let norm = h.frobenius_norm();
    let floor = f64::EPSILON * norm;

    let mut converged = n < 2 || norm == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let residual = off_diagonal_norm(&a, n);
        if residual <= floor || residual < f64::MIN_POSITIVE {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_mut(), n, p, q);
            }
        }
    }
    if !converged {
        let residual = off_diagonal_norm(&a, n);
        if residual > floor {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, residual });
        }
    }
    let values = (0..n).map(|i| a[i * n + i].re).collect();
    Ok((values, v))
}

/// Annihilates `a[p][q]` with `A ← J†AJ`, `J = diag(1, e^{-iφ}) · R(θ)` in
/// the `(p, q)` plane, where `φ = arg a[p][q]`.
fn rotate(a: &mut [C64], v: Option<&mut ComplexMatrix>, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = super::cabs(apq);
    if mag < f64::MIN_POSITIVE {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else {
        let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
        sign / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase_conj = (apq / mag).conj();
    let s_phase = phase_conj * s;
    let c_phase = phase_conj * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp * c - akq * s_phase;
        let new_kq = akp * s + akq * c_phase;
        a[k * n + p] = new_kp;
        a[k * n + q] = new_kq;
        a[p * n + k] = new_kp.conj();
        a[q * n + k] = new_kq.conj();
    }
    a[p * n + p] = C64::new(app - t * mag, 0.0);
    a[q * n + q] = C64::new(aqq + t * mag, 0.0);
    a[p * n + q] = C64::zero();
    a[q * n + p] = C64::zero();

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c - vkq * s_phase;
            v[(k, q)] = vkp * s + vkq * c_phase;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn reconstruction_residual(h: &HermitianMatrix, s: &Spectrum) -> f64 {
        s.reconstruct(|l| l).as_matrix().sub(h.as_matrix()).frobenius_norm() / h.frobenius_norm().max(1.0)
    }

    #[test]
    fn identity_and_diagonal() {
        let s = hermitian_eig(&HermitianMatrix::identity(4)).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0; 4]);
        let d = HermitianMatrix::from_real_diagonal(&[3.0, -1.0]);
        assert_eq!(eigenvalues(&d).unwrap(), vec![-1.0, 3.0]);
        let s = hermitian_eig(&d).unwrap();
        assert_eq!(s.eigenvector(0), vec![C64::zero(), C64::new(1.0, 0.0)]);
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let h = HermitianMatrix::from_parts(2, &[2.0, 0.0, 0.0, 2.0], &[0.0, 1.0, -1.0, 0.0]).unwrap();
        let s = hermitian_eig(&h).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-14);
        assert!(reconstruction_residual(&h, &s) < 1e-14);
        assert!(s.eigenvectors.unitarity_residual() < 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let s = hermitian_eig(&HermitianMatrix::zeros(3)).unwrap();
        assert_eq!(s.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn deterministic_pseudo_random_matrices_reconstruct() {
        // xorshift fill, independent of the ensembles module
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for n in [2, 3, 5, 8, 13, 24] {
            let m = ComplexMatrix::from_fn(n, n, |_, _| C64::new(next(), next()));
            let h = HermitianMatrix::from_matrix(m).unwrap();
            let s = hermitian_eig(&h).unwrap();
            assert!(reconstruction_residual(&h, &s) < 1e-12, "n = {n}");
            assert!(s.eigenvectors.unitarity_residual() < 1e-12, "n = {n}");
            assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            let only = eigenvalues(&h).unwrap();
            for (a, b) in only.iter().zip(&s.eigenvalues) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
