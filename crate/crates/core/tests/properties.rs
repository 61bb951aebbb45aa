use proptest::prelude::*;
use rand::Rng;
use ptspec_core::analysis::{count_negative, negativity};
use ptspec_core::ensembles::{haar_unitary, hilbert_schmidt_random, induced_random, SampleStream};
use ptspec_core::linalg::{
    eigenvalues, interlacing_check, jordan_split, partial_transpose, partial_transpose_on, schur_product,
};
use ptspec_core::{BipartiteShape, ComplexMatrix, HermitianMatrix, Subsystem, C64};

fn shapes() -> impl Strategy<Value = BipartiteShape> {
    (1usize..=4, 1usize..=4).prop_map(|(a, b)| BipartiteShape::new(a, b).unwrap())
}

fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = SampleStream::new(seed, 0).rng();
    let g = ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    HermitianMatrix::from_matrix(g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partial_transpose_is_an_involution(shape in shapes(), seed in any::<u64>()) {
        let h = random_hermitian(shape.dim(), seed);
        let twice = partial_transpose(&partial_transpose(&h, shape).unwrap(), shape).unwrap();
        prop_assert_eq!(twice, h);
    }

    #[test]
    fn partial_transpose_preserves_trace_and_norm(shape in shapes(), seed in any::<u64>()) {
        let h = random_hermitian(shape.dim(), seed);
        let pt = partial_transpose(&h, shape).unwrap();
        prop_assert!((pt.trace() - h.trace()).abs() < 1e-12);
        prop_assert!((pt.frobenius_norm() - h.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn transposing_b_is_the_full_transpose_of_transposing_a(shape in shapes(), seed in any::<u64>()) {
        let h = random_hermitian(shape.dim(), seed);
        let on_a = partial_transpose(&h, shape).unwrap();
        let on_b = partial_transpose_on(&h, shape, Subsystem::B).unwrap();
        prop_assert_eq!(on_b.as_matrix(), &on_a.as_matrix().transpose());
    }

    #[test]
    fn jordan_parts_roundtrip(n in 1usize..=8, seed in any::<u64>()) {
        let h = random_hermitian(n, seed);
        let (plus, minus) = jordan_split(&h).unwrap();
        prop_assert!(plus.sub(&minus).unwrap().max_abs_diff(&h) < 1e-10);
        let product = plus.as_matrix().matmul(minus.as_matrix());
        prop_assert!(product.frobenius_norm() < 1e-10);
        prop_assert!(eigenvalues(&plus).unwrap()[0] >= -1e-10);
        prop_assert!(eigenvalues(&minus).unwrap()[0] >= -1e-10);
    }

    #[test]
    fn negativity_is_sum_of_negative_eigenvalues(shape in shapes(), seed in any::<u64>()) {
        let rho = hilbert_schmidt_random(shape, &SampleStream::new(seed, 0)).unwrap();
        let report = count_negative(&rho, 1e-10).unwrap();
        prop_assert!((negativity(&rho).unwrap() - report.negativity).abs() < 1e-10);
        prop_assert!(report.within_theorem1_bound());
    }

    #[test]
    fn induced_states_are_valid(shape in shapes(), k in 1usize..=6, seed in any::<u64>()) {
        let rho = induced_random(shape, k, &SampleStream::new(seed, 3)).unwrap();
        prop_assert!((rho.matrix().trace() - 1.0).abs() < 1e-12);
        prop_assert!(eigenvalues(rho.matrix()).unwrap()[0] >= -1e-10);
        // rank is at most k
        let positive = eigenvalues(rho.matrix()).unwrap().iter().filter(|&&l| l > 1e-10).count();
        prop_assert!(positive <= k);
    }
}

#[test]
fn interlacing_over_random_pairs() {
    let mut worst = f64::INFINITY;
    for seed in 0..500u64 {
        let n = 2 + (seed % 7) as usize;
        let h = random_hermitian(n, seed.wrapping_mul(0x9e37_79b9));
        let keep: Vec<usize> = (0..n).filter(|i| (seed >> (i % 16)) & 1 == 0 || *i == 0).collect();
        let r = interlacing_check(&h, &keep, 1e-9).unwrap();
        assert!(r.holds, "seed {seed}: margin {}", r.worst_margin);
        worst = worst.min(r.worst_margin);
    }
    assert!(worst >= -1e-9);
}

#[test]
fn schur_product_of_states_is_positive() {
    for seed in 0..200u64 {
        let shape = BipartiteShape::new(1 + (seed % 3) as usize, 2 + (seed % 2) as usize).unwrap();
        let a = hilbert_schmidt_random(shape, &SampleStream::new(seed, 0)).unwrap();
        let b = hilbert_schmidt_random(shape, &SampleStream::new(seed, 1)).unwrap();
        let p = schur_product(a.matrix(), b.matrix()).unwrap();
        assert!(eigenvalues(&p).unwrap()[0] >= -1e-10, "seed {seed}");
    }
}

#[test]
fn local_unitaries_leave_the_partial_transpose_spectrum_unchanged() {
    for trial in 0..100u64 {
        let shape = BipartiteShape::new(2 + (trial % 2) as usize, 2 + (trial % 3) as usize).unwrap();
        let rho = hilbert_schmidt_random(shape, &SampleStream::new(trial, 0)).unwrap();
        let u = haar_unitary(shape.dim_a(), &SampleStream::new(trial, 1)).unwrap();
        let v = haar_unitary(shape.dim_b(), &SampleStream::new(trial, 2)).unwrap();
        let moved = rho.matrix().conjugate_by(&u.kron(&v)).unwrap();
        let before = eigenvalues(&partial_transpose(rho.matrix(), shape).unwrap()).unwrap();
        let after = eigenvalues(&partial_transpose(&moved, shape).unwrap()).unwrap();
        for (x, y) in before.iter().zip(&after) {
            assert!((x - y).abs() < 1e-9, "trial {trial}: {x} vs {y}");
        }
    }
}
