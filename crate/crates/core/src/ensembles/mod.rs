//! Seeded generators of random states and unitaries.
//!
//! Every generator is a pure function of its parameters and a
//! [`SampleStream`]; the same `(master_seed, sample_index)` always produces
//! bit-identical output, whatever thread or order it runs in.

mod stream;
mod synth;

use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{qr_decompose, BipartiteShape, ComplexMatrix, HermitianMatrix, C64};
use crate::{DensityMatrix, Error, Result};

pub use stream::SampleStream;
pub use synth::{single_negative_instance, SingleNegativeInstance, SingleNegativeParams};

/// Random-state measure used by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum EnsembleKind {
    /// `GG†/tr(GG†)` with square complex Ginibre `G`.
    HilbertSchmidt,
    /// Haar-random pure states.
    RandomPure,
    /// Two-qubit X-shaped states (see [`bell_diagonal_random`]).
    BellDiagonal,
    /// Two-qubit Werner states with `p` uniform on `[0, 1]`.
    Werner,
    /// Induced measure: partial trace of a Haar pure state over a
    /// `k`-dimensional ancilla, i.e. `GG†/tr` with a `dim × k` Ginibre `G`.
    Induced { k: usize },
}

impl EnsembleKind {
    pub fn validate(&self, shape: BipartiteShape) -> Result<()> {
        match self {
            EnsembleKind::BellDiagonal | EnsembleKind::Werner if shape != BipartiteShape::qubits() => {
                Err(Error::Argument(alloc::format!("{} ensemble is only defined for 2x2, got {shape}", self.name())))
            }
            EnsembleKind::Induced { k: 0 } => Err(Error::Argument("induced ensemble needs ancilla dimension k >= 1".into())),
            _ => Ok(()),
        }
    }

    pub fn sample(&self, shape: BipartiteShape, stream: &SampleStream) -> Result<DensityMatrix> {
        self.validate(shape)?;
        match *self {
            EnsembleKind::HilbertSchmidt => hilbert_schmidt_random(shape, stream),
            EnsembleKind::RandomPure => Ok(random_pure_density(shape, stream)),
            EnsembleKind::BellDiagonal => Ok(bell_diagonal_random(stream)),
            EnsembleKind::Werner => {
                let p: f64 = stream.rng().random();
                werner_state(p)
            }
            EnsembleKind::Induced { k } => induced_random(shape, k, stream),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EnsembleKind::HilbertSchmidt => "hilbert_schmidt",
            EnsembleKind::RandomPure => "random_pure",
            EnsembleKind::BellDiagonal => "bell_diagonal",
            EnsembleKind::Werner => "werner",
            EnsembleKind::Induced { .. } => "induced",
        }
    }
}

/// Uniform on `(0, 1]`.
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}

fn standard_exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    -libm::log(open_unit(rng))
}

fn polar(r: f64, theta: f64) -> C64 {
    let (s, c) = libm::sincos(theta);
    C64::new(r * c, r * s)
}

/// Standard complex normal, `E|z|² = 1`, by Box–Muller: `|z|²` is a unit
/// exponential and the phase is uniform. Transcendentals go through libm
/// so every build draws bit-identical samples.
pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let r = standard_exponential(rng).sqrt();
    polar(r, TAU * rng.random::<f64>())
}

pub(crate) fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

fn normalized_gram(g: &ComplexMatrix, shape: BipartiteShape) -> Result<DensityMatrix> {
    let w = HermitianMatrix::from_matrix(g.matmul(&g.adjoint()))?;
    DensityMatrix::from_unnormalized(w, shape)
}

/// Hilbert–Schmidt random state `GG†/tr(GG†)`.
pub fn hilbert_schmidt_random(shape: BipartiteShape, stream: &SampleStream) -> Result<DensityMatrix> {
    let n = shape.dim();
    let g = ginibre(n, n, &mut stream.rng());
    normalized_gram(&g, shape)
}

/// Induced-measure state with ancilla dimension `k`.
pub fn induced_random(shape: BipartiteShape, k: usize, stream: &SampleStream) -> Result<DensityMatrix> {
    if k == 0 {
        return Err(Error::Argument("ancilla dimension must be at least 1".into()));
    }
    let g = ginibre(shape.dim(), k, &mut stream.rng());
    normalized_gram(&g, shape)
}

/// `|ψ⟩⟨ψ|` with `|ψ⟩` Haar-distributed on the unit sphere.
pub fn random_pure_density(shape: BipartiteShape, stream: &SampleStream) -> DensityMatrix {
    let mut rng = stream.rng();
    loop {
        let psi: Vec<C64> = (0..shape.dim()).map(|_| complex_gaussian(&mut rng)).collect();
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-150 {
            let psi: Vec<C64> = psi.iter().map(|z| z / norm).collect();
            return DensityMatrix::new_unchecked(HermitianMatrix::outer(&psi), shape);
        }
    }
}

/// Two-qubit state with the X-shaped zero pattern
///
/// ```text
/// [ a1  0   0   b1 ]
/// [ 0   a2  b2  0  ]
/// [ 0   b2* a3  0  ]
/// [ b1* 0   0   a4 ]
/// ```
///
/// Fails unless `a` is a probability vector, `|b1|² ≤ a1·a4` and
/// `|b2|² ≤ a2·a3`.
pub fn bell_diagonal(alphas: [f64; 4], beta1: C64, beta2: C64) -> Result<DensityMatrix> {
    if alphas.iter().any(|&a| !(a >= 0.0)) || (alphas.iter().sum::<f64>() - 1.0).abs() > crate::TRACE_TOL {
        return Err(Error::Argument(alloc::format!("diagonal {alphas:?} is not a probability vector")));
    }
    if beta1.norm_sqr() > alphas[0] * alphas[3] || beta2.norm_sqr() > alphas[1] * alphas[2] {
        return Err(Error::Argument("off-diagonal entries violate the 2x2 positivity constraints".into()));
    }
    Ok(DensityMatrix::new_unchecked(x_state(alphas, beta1, beta2), BipartiteShape::qubits()))
}

fn x_state(a: [f64; 4], b1: C64, b2: C64) -> HermitianMatrix {
    let z = C64::new(0.0, 0.0);
    let r = |x: f64| C64::new(x, 0.0);
    let m = ComplexMatrix::new(
        4,
        4,
        alloc::vec![
            r(a[0]), z, z, b1,
            z, r(a[1]), b2, z,
            z, b2.conj(), r(a[2]), z,
            b1.conj(), z, z, r(a[3]),
        ],
    )
    .expect("4x4");
    HermitianMatrix::from_exact(m)
}

/// Random X-shaped two-qubit state.
///
/// The diagonal is uniform on the probability simplex; `b1` and `b2` are
/// uniform in the disks of radius `√(a1·a4)` and `√(a2·a3)`, so both
/// positivity constraints hold by construction and no draw is rejected.
pub fn bell_diagonal_random(stream: &SampleStream) -> DensityMatrix {
    let mut rng = stream.rng();
    let mut alphas = [0.0; 4];
    for a in &mut alphas {
        *a = standard_exponential(&mut rng);
    }
    let total: f64 = alphas.iter().sum();
    for a in &mut alphas {
        *a /= total;
    }
    let mut disk = |radius: f64| {
        let r = radius * rng.random::<f64>().sqrt();
        let theta = TAU * rng.random::<f64>();
        polar(r, theta)
    };
    let b1 = disk((alphas[0] * alphas[3]).sqrt());
    let b2 = disk((alphas[1] * alphas[2]).sqrt());
    DensityMatrix::new_unchecked(x_state(alphas, b1, b2), BipartiteShape::qubits())
}

/// `p·|Φ⁺⟩⟨Φ⁺| + (1 − p)/4·I` on two qubits.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Argument(alloc::format!("Werner weight must lie in [0, 1], got {p}")));
    }
    let d = 0.25 * (1.0 - p);
    let s = 0.5 * p;
    let z = C64::new(s, 0.0);
    Ok(DensityMatrix::new_unchecked(x_state([d + s, d, d, d + s], z, C64::new(0.0, 0.0)), BipartiteShape::qubits()))
}

/// `|Φ⟩⟨Φ|` with `|Φ⟩ = n^{-1/2} Σᵢ |ii⟩` on `n × n`.
pub fn maximally_entangled(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::Argument(alloc::format!("maximally entangled state needs n >= 2, got {n}")));
    }
    let shape = BipartiteShape::square(n)?;
    let amp = 1.0 / (n as f64);
    let m = ComplexMatrix::from_fn(n * n, n * n, |r, c| {
        if r % (n + 1) == 0 && c % (n + 1) == 0 {
            C64::new(amp, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(DensityMatrix::new_unchecked(HermitianMatrix::from_exact(m), shape))
}

/// Haar-random unitary: QR of a complex Ginibre matrix.
///
/// The Gram–Schmidt factor has a positive real diagonal in `R`, which is the
/// phase convention that makes `Q` exactly Haar distributed.
pub fn haar_unitary(dim: usize, stream: &SampleStream) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::Argument("unitary dimension must be positive".into()));
    }
    let mut rng = stream.rng();
    loop {
        let g = ginibre(dim, dim, &mut rng);
        // rank deficiency has probability zero; redraw if it happens
        if let Ok((q, _)) = qr_decompose(&g) {
            return Ok(q);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigenvalues, partial_transpose};

    fn stream(i: u64) -> SampleStream {
        SampleStream::new(0x5eed, i)
    }

    #[test]
    fn generators_are_deterministic() {
        let shape = BipartiteShape::new(2, 3).unwrap();
        let a = hilbert_schmidt_random(shape, &stream(7)).unwrap();
        let b = hilbert_schmidt_random(shape, &stream(7)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, hilbert_schmidt_random(shape, &stream(8)).unwrap());
        assert_eq!(bell_diagonal_random(&stream(3)), bell_diagonal_random(&stream(3)));
        assert_eq!(haar_unitary(4, &stream(1)).unwrap(), haar_unitary(4, &stream(1)).unwrap());
    }

    #[test]
    fn werner_edge_cases() {
        assert!(werner_state(-0.1).is_err());
        assert!(werner_state(1.5).is_err());
        let mixed = werner_state(0.0).unwrap();
        assert_eq!(*mixed.matrix(), HermitianMatrix::identity(4).scale(0.25));
        // closed form: eigenvalues of the partial transpose are (1-p)/4 ± p/2 and (1-p)/4 + p/2
        for p in [0.2, 1.0 / 3.0, 0.8, 1.0] {
            let pt = partial_transpose(werner_state(p).unwrap().matrix(), BipartiteShape::qubits()).unwrap();
            let ev = eigenvalues(&pt).unwrap();
            let low = (1.0 - p) / 4.0 - p / 2.0;
            assert!((ev[0] - low).abs() < 1e-15, "p = {p}: {ev:?}");
        }
    }

    #[test]
    fn maximally_entangled_rejects_small_n() {
        assert!(maximally_entangled(1).is_err());
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let bell = HermitianMatrix::outer(&[C64::new(s, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(s, 0.0)]);
        assert!(maximally_entangled(2).unwrap().matrix().max_abs_diff(&bell) < 1e-15);
    }

    #[test]
    fn bell_diagonal_validation() {
        assert!(bell_diagonal([0.25; 4], C64::new(0.3, 0.0), C64::new(0.0, 0.0)).is_err());
        assert!(bell_diagonal([0.5, 0.5, 0.1, -0.1], C64::new(0.0, 0.0), C64::new(0.0, 0.0)).is_err());
        assert!(bell_diagonal([0.25; 4], C64::new(0.25, 0.0), C64::new(0.0, -0.2)).is_ok());
    }

    #[test]
    fn ensemble_kind_validation() {
        let s = BipartiteShape::new(2, 3).unwrap();
        assert!(EnsembleKind::BellDiagonal.validate(s).is_err());
        assert!(EnsembleKind::Werner.validate(s).is_err());
        assert!(EnsembleKind::Induced { k: 0 }.validate(s).is_err());
        assert!(EnsembleKind::Induced { k: 2 }.validate(s).is_ok());
        let rho = EnsembleKind::Induced { k: 1 }.sample(s, &stream(0)).unwrap();
        // k = 1 gives a pure state
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_dim_one_is_a_phase() {
        let u = haar_unitary(1, &stream(9)).unwrap();
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
        assert!(haar_unitary(0, &stream(9)).is_err());
    }
}
