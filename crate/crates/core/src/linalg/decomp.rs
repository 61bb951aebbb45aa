use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{ComplexMatrix, C64};
use crate::{Error, Result};

/// Determinant by LU factorization with partial pivoting.
pub fn determinant(m: &ComplexMatrix) -> Result<C64> {
    if !m.is_square() {
        return Err(Error::shape("a square matrix", alloc::format!("{}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut a: Vec<C64> = m.as_slice().to_vec();
    let mut det = C64::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| super::cabs(a[x * n + col]).total_cmp(&super::cabs(a[y * n + col])))
            .expect("non-empty range");
        if a[pivot * n + col].is_zero() {
            return Ok(C64::zero());
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for r in (col + 1)..n {
            let factor = a[r * n + col] / d;
            if factor.is_zero() {
                continue;
            }
            for j in col..n {
                let upper = a[col * n + j];
                a[r * n + j] -= factor * upper;
            }
        }
    }
    Ok(det)
}

/// Thin QR factorization of a square matrix by Gram–Schmidt with one
/// reorthogonalization pass. Returns `(Q, R)` with `R` upper triangular.
///
/// Fails with [`Error::Singular`] when a column is numerically dependent on
/// the previous ones.
pub fn qr_decompose(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::shape("a square matrix", alloc::format!("{}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let scale = m.frobenius_norm();
    let mut q_cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut r = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut v = m.column(j);
        for _pass in 0..2 {
            for (i, qi) in q_cols.iter().enumerate() {
                let proj: C64 = qi.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                r[(i, j)] += proj;
                for (vk, qk) in v.iter_mut().zip(qi) {
                    *vk -= proj * qk;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-14 * scale || norm == 0.0 {
            return Err(Error::Singular(alloc::format!("column {j} is linearly dependent")));
        }
        r[(j, j)] = C64::new(norm, 0.0);
        for vk in &mut v {
            *vk /= norm;
        }
        q_cols.push(v);
    }
    let q = ComplexMatrix::from_fn(n, n, |i, j| q_cols[j][i]);
    Ok((q, r))
}
