use alloc::vec::Vec;

use super::{eigenvalues, hermitian_eig, BipartiteShape, ComplexMatrix, HermitianMatrix, Subsystem};
use crate::{Error, Result};

/// Partial transpose on subsystem A.
///
/// With `dim_b × dim_b` blocks indexed by the basis of A, block `(i, j)` of
/// the result is block `(j, i)` of the input.
pub fn partial_transpose(rho: &HermitianMatrix, shape: BipartiteShape) -> Result<HermitianMatrix> {
    partial_transpose_on(rho, shape, Subsystem::A)
}

/// Partial transpose on the selected subsystem. This is an entry
/// permutation, so it is exact and its own inverse.
pub fn partial_transpose_on(rho: &HermitianMatrix, shape: BipartiteShape, on: Subsystem) -> Result<HermitianMatrix> {
    shape.check_dim(rho.dim())?;
    let (da, db) = (shape.dim_a(), shape.dim_b());
    let src = rho.as_matrix();
    let n = shape.dim();
    let out = ComplexMatrix::from_fn(n, n, |row, col| {
        let (a, b) = (row / db, row % db);
        let (a2, b2) = (col / db, col % db);
        debug_assert!(a < da && a2 < da);
        match on {
            Subsystem::A => src[(a2 * db + b, a * db + b2)],
            Subsystem::B => src[(a * db + b2, a2 * db + b)],
        }
    });
    Ok(HermitianMatrix::from_exact(out))
}

/// Reduced state on the kept subsystem.
pub fn partial_trace(rho: &HermitianMatrix, shape: BipartiteShape, keep: Subsystem) -> Result<HermitianMatrix> {
    shape.check_dim(rho.dim())?;
    let (da, db) = (shape.dim_a(), shape.dim_b());
    let src = rho.as_matrix();
    let out = match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, j| (0..db).map(|b| src[(i * db + b, j * db + b)]).sum()),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |i, j| (0..da).map(|a| src[(a * db + i, a * db + j)]).sum()),
    };
    Ok(HermitianMatrix::symmetrized(out))
}

/// `|H| = Σ |λₖ| vₖvₖ†`.
pub fn operator_abs(h: &HermitianMatrix) -> Result<HermitianMatrix> {
    Ok(hermitian_eig(h)?.reconstruct(f64::abs))
}

/// Jordan decomposition `H = H₊ − H₋` with `H₊H₋ = 0`, both parts positive
/// semidefinite. Returns `(H₊, H₋)`.
pub fn jordan_split(h: &HermitianMatrix) -> Result<(HermitianMatrix, HermitianMatrix)> {
    let spectrum = hermitian_eig(h)?;
    let plus = spectrum.reconstruct(|l| l.max(0.0));
    let minus = spectrum.reconstruct(|l| (-l).max(0.0));
    Ok((plus, minus))
}

/// Entrywise (Hadamard) product.
pub fn schur_product(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    a.check_same_dim(b)?;
    let n = a.dim();
    let (x, y) = (a.as_matrix(), b.as_matrix());
    Ok(HermitianMatrix::symmetrized(ComplexMatrix::from_fn(n, n, |i, j| x[(i, j)] * y[(i, j)])))
}

/// Rows and columns restricted to `keep`, in the given order.
pub fn principal_submatrix(h: &HermitianMatrix, keep: &[usize]) -> Result<HermitianMatrix> {
    if keep.is_empty() {
        return Err(Error::Argument("index set must be non-empty".into()));
    }
    let n = h.dim();
    for (pos, &i) in keep.iter().enumerate() {
        if i >= n {
            return Err(Error::Argument(alloc::format!("index {i} out of range for dimension {n}")));
        }
        if keep[..pos].contains(&i) {
            return Err(Error::Argument(alloc::format!("duplicate index {i}")));
        }
    }
    let src = h.as_matrix();
    let r = keep.len();
    Ok(HermitianMatrix::from_exact(ComplexMatrix::from_fn(r, r, |i, j| src[(keep[i], keep[j])])))
}

/// Outcome of a Cauchy interlacing check.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct InterlacingReport {
    pub holds: bool,
    /// Smallest slack over both inequalities and all `k`; negative when an
    /// inequality fails.
    pub worst_margin: f64,
    pub full: Vec<f64>,
    pub sub: Vec<f64>,
}

/// Checks `λₖ(H) − tol ≤ λₖ(H_r) ≤ λₖ₊ₙ₋ᵣ(H) + tol` for every `k` in `1..=r`,
/// eigenvalues in increasing order.
pub fn interlacing_check(h: &HermitianMatrix, keep: &[usize], tol: f64) -> Result<InterlacingReport> {
    let sub_matrix = principal_submatrix(h, keep)?;
    let full = eigenvalues(h)?;
    let sub = eigenvalues(&sub_matrix)?;
    let (n, r) = (full.len(), sub.len());
    let worst_margin = (0..r)
        .map(|k| (sub[k] - full[k]).min(full[k + n - r] - sub[k]))
        .fold(f64::INFINITY, f64::min);
    Ok(InterlacingReport { holds: worst_margin >= -tol, worst_margin, full, sub })
}

/// `Σ |λₖ|`.
pub fn trace_norm(h: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues(h)?.iter().map(|l| l.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;
    use alloc::vec;

    fn bell_projector() -> HermitianMatrix {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        HermitianMatrix::outer(&[C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)])
    }

    #[test]
    fn partial_transpose_fixes_diagonal_matrices() {
        let d = HermitianMatrix::from_real_diagonal(&[0.1, 0.2, 0.3, 0.15, 0.05, 0.2]);
        let shape = BipartiteShape::new(2, 3).unwrap();
        assert_eq!(partial_transpose(&d, shape).unwrap(), d);
        assert_eq!(partial_transpose_on(&d, shape, Subsystem::B).unwrap(), d);
    }

    #[test]
    fn partial_transpose_moves_a_single_basis_unit() {
        // |i⟩⟨k| ⊗ |j⟩⟨l| with (i, k, j, l) = (0, 1, 2, 0) on 2x3; made
        // Hermitian by adding its adjoint, which is moved the same way.
        let shape = BipartiteShape::new(2, 3).unwrap();
        let (i, k, j, l) = (0, 1, 2, 0);
        let unit = |a: usize, a2: usize, b: usize, b2: usize| {
            let mut m = ComplexMatrix::zeros(6, 6);
            m[(a * 3 + b, a2 * 3 + b2)] = C64::new(1.0, 0.0);
            m[(a2 * 3 + b2, a * 3 + b)] = C64::new(1.0, 0.0);
            HermitianMatrix::from_matrix(m).unwrap()
        };
        let input = unit(i, k, j, l);
        let expected = unit(k, i, j, l);
        assert_eq!(partial_transpose(&input, shape).unwrap(), expected);
    }

    #[test]
    fn bell_projector_partial_transpose_spectrum() {
        let pt = partial_transpose(&bell_projector(), BipartiteShape::qubits()).unwrap();
        let ev = eigenvalues(&pt).unwrap();
        for (got, want) in ev.iter().zip([-0.5, 0.5, 0.5, 0.5]) {
            assert!((got - want).abs() < 1e-14, "{ev:?}");
        }
        assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-14);
        let abs = operator_abs(&pt).unwrap();
        for l in eigenvalues(&abs).unwrap() {
            assert!((l - 0.5).abs() < 1e-14);
        }
        let (_, minus) = jordan_split(&pt).unwrap();
        assert!((minus.trace() - 0.5).abs() < 1e-14);
        let minus_ev = eigenvalues(&minus).unwrap();
        assert_eq!(minus_ev.iter().filter(|l| l.abs() > 1e-12).count(), 1);
    }

    #[test]
    fn shape_errors() {
        let h = HermitianMatrix::identity(4);
        let shape = BipartiteShape::new(2, 3).unwrap();
        assert!(matches!(partial_transpose(&h, shape), Err(Error::Shape { .. })));
        assert!(matches!(partial_trace(&h, shape, Subsystem::A), Err(Error::Shape { .. })));
        assert!(matches!(schur_product(&h, &HermitianMatrix::identity(3)), Err(Error::Shape { .. })));
    }

    #[test]
    fn partial_trace_examples() {
        let mixed = HermitianMatrix::identity(4).scale(0.25);
        let r = partial_trace(&mixed, BipartiteShape::qubits(), Subsystem::B).unwrap();
        assert!(r.max_abs_diff(&HermitianMatrix::identity(2).scale(0.5)) < 1e-15);
        // index-contraction oracle for the Bell projector: (ρ_A)_{ij} = Σ_b ρ_{ib,jb}
        let bell = bell_projector();
        let oracle: [[f64; 2]; 2] =
            core::array::from_fn(|i| core::array::from_fn(|j| (0..2).map(|b| bell.get(2 * i + b, 2 * j + b).re).sum()));
        for (i, row) in oracle.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert!((x - if i == j { 0.5 } else { 0.0 }).abs() < 1e-15);
            }
        }
        let r = partial_trace(&bell, BipartiteShape::qubits(), Subsystem::A).unwrap();
        assert!(r.max_abs_diff(&HermitianMatrix::identity(2).scale(0.5)) < 1e-15);
    }

    #[test]
    fn product_state_partial_trace_recovers_factor() {
        let sigma = HermitianMatrix::from_parts(2, &[0.7, 0.1, 0.1, 0.3], &[0.0, 0.2, -0.2, 0.0]).unwrap();
        let tau = HermitianMatrix::from_real_diagonal(&[0.5, 0.25, 0.25]);
        let rho = HermitianMatrix::from_matrix(sigma.as_matrix().kron(tau.as_matrix())).unwrap();
        let shape = BipartiteShape::new(2, 3).unwrap();
        let back = partial_trace(&rho, shape, Subsystem::A).unwrap();
        assert!(back.max_abs_diff(&sigma) < 1e-15);
        let back = partial_trace(&rho, shape, Subsystem::B).unwrap();
        assert!(back.max_abs_diff(&tau) < 1e-15);
    }

    #[test]
    fn absolute_value_and_jordan_split_of_diagonal() {
        let d = HermitianMatrix::from_real_diagonal(&[2.0, -3.0]);
        assert_eq!(operator_abs(&d).unwrap(), HermitianMatrix::from_real_diagonal(&[2.0, 3.0]));
        let (p, m) = jordan_split(&d).unwrap();
        assert_eq!(p, HermitianMatrix::from_real_diagonal(&[2.0, 0.0]));
        assert_eq!(m, HermitianMatrix::from_real_diagonal(&[0.0, 3.0]));
        assert_eq!(trace_norm(&d).unwrap(), 5.0);
    }

    #[test]
    fn schur_product_examples() {
        let a = HermitianMatrix::from_parts(2, &[1.0, 2.0, 2.0, 5.0], &[0.0, -1.0, 1.0, 0.0]).unwrap();
        let id = HermitianMatrix::identity(2);
        assert_eq!(schur_product(&id, &a).unwrap(), HermitianMatrix::from_real_diagonal(&[1.0, 5.0]));
        let ones = HermitianMatrix::from_parts(2, &[1.0; 4], &[0.0; 4]).unwrap();
        assert_eq!(schur_product(&ones, &a).unwrap(), a);
    }

    #[test]
    fn principal_submatrix_examples_and_errors() {
        let d = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        assert_eq!(principal_submatrix(&d, &[0, 2]).unwrap(), HermitianMatrix::from_real_diagonal(&[1.0, 3.0]));
        assert_eq!(principal_submatrix(&d, &[0, 1, 2]).unwrap(), d);
        assert!(matches!(principal_submatrix(&d, &[0, 3]), Err(Error::Argument(_))));
        assert!(matches!(principal_submatrix(&d, &[1, 1]), Err(Error::Argument(_))));
        assert!(matches!(principal_submatrix(&d, &[]), Err(Error::Argument(_))));
    }

    #[test]
    fn interlacing_on_diagonal_and_single_entries() {
        let d = HermitianMatrix::from_real_diagonal(&[4.0, -1.0, 2.5, 0.0]);
        for keep in [vec![0], vec![1, 3], vec![3, 0, 2], vec![0, 1, 2, 3]] {
            assert!(interlacing_check(&d, &keep, 0.0).unwrap().holds);
        }
        let h = HermitianMatrix::from_parts(3, &[1.0, 0.5, 0.0, 0.5, -2.0, 0.3, 0.0, 0.3, 0.7], &[0.0, 0.1, 0.4, -0.1, 0.0, 0.0, -0.4, 0.0, 0.0]).unwrap();
        let ev = eigenvalues(&h).unwrap();
        for i in 0..3 {
            let r = interlacing_check(&h, &[i], 1e-12).unwrap();
            assert!(r.holds);
            let hii = h.get(i, i).re;
            assert!(ev[0] <= hii + 1e-12 && hii <= ev[2] + 1e-12);
        }
    }
}
