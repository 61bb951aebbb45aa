use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::C64;
use crate::{Error, Result};

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Argument(alloc::format!("matrix dimensions must be positive, got {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::shape(rows * cols, alloc::format!("{} entries", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diagonal(values: &[C64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { C64::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    /// Matrix product.
    ///
    /// Panics if the inner dimensions disagree.
    pub fn matmul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul: inner dimensions differ");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let (r, c) = (rhs.rows, rhs.cols);
        Self::from_fn(self.rows * r, self.cols * c, |i, j| self[(i / r, j / c)] * rhs[(i % r, j % c)])
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Entrywise `self - rhs`. Panics on shape mismatch.
    pub fn sub(&self, rhs: &ComplexMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "max_abs_diff: shape mismatch");
        self.data.iter().zip(&rhs.data).map(|(a, b)| super::cabs(a - b)).fold(0.0, f64::max)
    }

    /// `‖U†U − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint().matmul(self).sub(&ComplexMatrix::identity(self.cols)).frobenius_norm()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// A square complex matrix that is exactly Hermitian.
///
/// Construction symmetrizes once, `M ← (M + M†)/2`, and zeroes the imaginary
/// parts of the diagonal. Every operation that produces a new
/// `HermitianMatrix` either permutes entries of a Hermitian input or
/// symmetrizes its result in the same way, so `h[(i, j)] == h[(j, i)].conj()`
/// holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::shape("a square matrix", alloc::format!("{}x{}", m.rows, m.cols)));
        }
        Ok(Self::symmetrized(m))
    }

    /// Builds a Hermitian matrix from row-major real and imaginary parts.
    pub fn from_parts(dim: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != dim * dim || im.len() != dim * dim {
            return Err(Error::shape(
                alloc::format!("{} entries per part", dim * dim),
                alloc::format!("re: {}, im: {}", re.len(), im.len()),
            ));
        }
        let data = re.iter().zip(im).map(|(&r, &i)| C64::new(r, i)).collect();
        Self::from_matrix(ComplexMatrix::new(dim, dim, data)?)
    }

    pub fn from_real_diagonal(values: &[f64]) -> Self {
        let d: Vec<C64> = values.iter().map(|&v| C64::new(v, 0.0)).collect();
        Self { inner: ComplexMatrix::from_diagonal(&d) }
    }

    pub fn identity(n: usize) -> Self {
        Self { inner: ComplexMatrix::identity(n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { inner: ComplexMatrix::zeros(n, n) }
    }

    /// `v v†` for a column vector `v`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self::symmetrized(ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()))
    }

    pub(crate) fn symmetrized(mut m: ComplexMatrix) -> Self {
        let n = m.rows;
        for i in 0..n {
            m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        Self { inner: m }
    }

    /// Wraps a matrix known to be exactly Hermitian (entry permutations of a
    /// Hermitian input).
    pub(crate) fn from_exact(m: ComplexMatrix) -> Self {
        debug_assert!(m.is_square());
        debug_assert!((0..m.rows).all(|i| (0..m.rows).all(|j| m[(i, j)] == m[(j, i)].conj())));
        Self { inner: m }
    }

    pub fn dim(&self) -> usize {
        self.inner.rows
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.inner[(i, j)]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.inner[(i, i)].re).collect()
    }

    /// Trace; real by construction.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.inner[(i, i)].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { inner: self.inner.scale(C64::new(s, 0.0)) }
    }

    pub fn add(&self, rhs: &HermitianMatrix) -> Result<Self> {
        self.check_same_dim(rhs)?;
        let data = self.inner.data.iter().zip(&rhs.inner.data).map(|(a, b)| a + b).collect();
        Ok(Self::from_exact(ComplexMatrix { rows: self.dim(), cols: self.dim(), data }))
    }

    pub fn sub(&self, rhs: &HermitianMatrix) -> Result<Self> {
        self.check_same_dim(rhs)?;
        Ok(Self::from_exact(self.inner.sub(&rhs.inner)))
    }

    /// `U H U†`, re-symmetrized.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.cols != self.dim() {
            return Err(Error::shape(alloc::format!("{} columns", self.dim()), u.cols));
        }
        Ok(Self::symmetrized(u.matmul(&self.inner).matmul(&u.adjoint())))
    }

    /// `⟨v|H|v⟩`.
    pub fn expectation(&self, v: &[C64]) -> f64 {
        let hv = self.inner.mul_vec(v);
        v.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re).sum()
    }

    pub fn max_abs_diff(&self, rhs: &HermitianMatrix) -> f64 {
        self.inner.max_abs_diff(&rhs.inner)
    }

    pub(crate) fn check_same_dim(&self, rhs: &HermitianMatrix) -> Result<()> {
        if self.dim() != rhs.dim() {
            return Err(Error::shape(self.dim(), rhs.dim()));
        }
        Ok(())
    }

    /// Row-major real parts.
    pub fn real_parts(&self) -> Vec<f64> {
        self.inner.data.iter().map(|z| z.re).collect()
    }

    /// Row-major imaginary parts.
    pub fn imag_parts(&self) -> Vec<f64> {
        self.inner.data.iter().map(|z| z.im).collect()
    }
}

/// Serialized in the matrix-interchange layout `{"dim", "re", "im"}`.
impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("HermitianMatrix", 3)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("re", &self.real_parts())?;
        s.serialize_field("im", &self.imag_parts())?;
        s.end()
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ComplexMatrix", 4)?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("cols", &self.cols)?;
        s.serialize_field("re", &self.data.iter().map(|z| z.re).collect::<Vec<_>>())?;
        s.serialize_field("im", &self.data.iter().map(|z| z.im).collect::<Vec<_>>())?;
        s.end()
    }
}
