//! Local-unitary canonical form of two-qubit states.
//!
//! In the product eigenbasis of the two reduced states, with basis phases
//! chosen so that `⟨00|ρ|01⟩ = A` and `⟨00|ρ|10⟩ = B` are real and
//! non-negative, every two-qubit state reads
//!
//! ```text
//! [ a11  A    B    α   ]
//! [ A    a22  β    −B  ]
//! [ B    β*   a33  −A  ]
//! [ α*   −B   −A   a44 ]
//! ```
//!
//! The `−A`, `−B` entries are forced by the reduced states being diagonal.

use serde::Serialize;

use crate::linalg::{cabs, hermitian_eig, partial_trace, ComplexMatrix, HermitianMatrix, Subsystem, C64};
use crate::{BipartiteShape, DensityMatrix, Error, Result};

/// Off-diagonal modulus below which a reduced state counts as already diagonal.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalForm2Q {
    pub a11: f64,
    pub a22: f64,
    pub a33: f64,
    pub a44: f64,
    /// `⟨00|ρ|01⟩`.
    #[serde(rename = "A")]
    pub coupling_a: f64,
    /// `⟨00|ρ|10⟩`.
    #[serde(rename = "B")]
    pub coupling_b: f64,
    /// `⟨00|ρ|11⟩`.
    pub alpha: C64,
    /// `⟨01|ρ|10⟩`.
    pub beta: C64,
    /// Local unitaries with `transformed = (U ⊗ V) ρ (U ⊗ V)†`.
    pub u_local: ComplexMatrix,
    pub v_local: ComplexMatrix,
    /// Largest deviation of `transformed` from the exact canonical pattern.
    pub residual: f64,
    pub transformed: HermitianMatrix,
}

impl CanonicalForm2Q {
    /// A form given directly by its parameters, with identity local unitaries.
    pub fn from_parameters(diagonal: [f64; 4], coupling_a: f64, coupling_b: f64, alpha: C64, beta: C64) -> Self {
        let mut form = Self {
            a11: diagonal[0],
            a22: diagonal[1],
            a33: diagonal[2],
            a44: diagonal[3],
            coupling_a,
            coupling_b,
            alpha,
            beta,
            u_local: ComplexMatrix::identity(2),
            v_local: ComplexMatrix::identity(2),
            residual: 0.0,
            transformed: HermitianMatrix::zeros(4),
        };
        form.transformed = form.ideal_matrix();
        form
    }

    /// The exact canonical-pattern matrix built from the parameters.
    pub fn ideal_matrix(&self) -> HermitianMatrix {
        let r = |x: f64| C64::new(x, 0.0);
        let (a, b) = (self.coupling_a, self.coupling_b);
        let m = ComplexMatrix::new(
            4,
            4,
            alloc::vec![
                r(self.a11), r(a), r(b), self.alpha,
                r(a), r(self.a22), self.beta, r(-b),
                r(b), self.beta.conj(), r(self.a33), r(-a),
                self.alpha.conj(), r(-b), r(-a), r(self.a44),
            ],
        )
        .expect("4x4");
        HermitianMatrix::from_exact(m)
    }

    pub fn diagonal(&self) -> [f64; 4] {
        [self.a11, self.a22, self.a33, self.a44]
    }
}

/// Unitary whose rows are the eigenvectors of a 2×2 reduced state, largest
/// eigenvalue first, each phased so its first non-negligible component is
/// real positive.
///
/// A reduced state that is already diagonal (in particular a degenerate one)
/// keeps the computational basis, so canonical inputs are fixed points.
fn reduced_eigenbasis(reduced: &HermitianMatrix) -> Result<ComplexMatrix> {
    let n = reduced.dim();
    if cabs(reduced.get(0, 1)) <= DEGENERACY_TOL {
        return Ok(ComplexMatrix::identity(n));
    }
    let spectrum = hermitian_eig(reduced)?;
    let mut rows = ComplexMatrix::zeros(n, n);
    for (r, j) in (0..n).rev().enumerate() {
        let anchor = (0..n).map(|i| spectrum.eigenvectors[(i, j)]).find(|&z| cabs(z) > 1e-12).unwrap_or(C64::new(1.0, 0.0));
        let fix = anchor.conj() / cabs(anchor);
        for i in 0..n {
            rows[(r, i)] = (spectrum.eigenvectors[(i, j)] * fix).conj();
        }
    }
    Ok(rows)
}

fn phase_of(z: C64) -> C64 {
    let n = cabs(z);
    if n > 0.0 {
        z / n
    } else {
        C64::new(1.0, 0.0)
    }
}

/// Brings a two-qubit state to the canonical form by local unitaries and
/// reports how far the result is from the exact pattern.
pub fn canonicalize_two_qubit(rho: &DensityMatrix) -> Result<CanonicalForm2Q> {
    let shape = BipartiteShape::qubits();
    if rho.shape() != shape {
        return Err(Error::Argument(alloc::format!("canonical form needs a 2x2 state, got {}", rho.shape())));
    }
    let m = rho.matrix();
    let u0 = reduced_eigenbasis(&partial_trace(m, shape, Subsystem::A)?)?;
    let v0 = reduced_eigenbasis(&partial_trace(m, shape, Subsystem::B)?)?;
    let rotated = m.conjugate_by(&u0.kron(&v0))?;

    // D = diag(1, e^{iφ}) ⊗ diag(1, e^{iθ}) maps ρ[0][1] → ρ[0][1]e^{−iθ}
    // and ρ[0][2] → ρ[0][2]e^{−iφ}.
    let theta = phase_of(rotated.get(0, 1));
    let phi = phase_of(rotated.get(0, 2));
    let one = C64::new(1.0, 0.0);
    let u = ComplexMatrix::from_diagonal(&[one, phi]).matmul(&u0);
    let v = ComplexMatrix::from_diagonal(&[one, theta]).matmul(&v0);
    let t = m.conjugate_by(&u.kron(&v))?;

    let coupling_a = t.get(0, 1).re;
    let coupling_b = t.get(0, 2).re;
    let residual = [
        t.get(0, 1).im.abs(),
        t.get(0, 2).im.abs(),
        cabs(t.get(2, 3) + coupling_a),
        cabs(t.get(1, 3) + coupling_b),
        (-coupling_a).max(0.0),
        (-coupling_b).max(0.0),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    Ok(CanonicalForm2Q {
        a11: t.get(0, 0).re,
        a22: t.get(1, 1).re,
        a33: t.get(2, 2).re,
        a44: t.get(3, 3).re,
        coupling_a,
        coupling_b,
        alpha: t.get(0, 3),
        beta: t.get(1, 2),
        u_local: u,
        v_local: v,
        residual,
        transformed: t,
    })
}
