//! Seeded random inputs for tests, validation suites and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::Matrix;
use crate::scalar::{Scalar, C64};
use crate::tensor::{Shape, Tensor};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scalars that can be drawn from a standard normal distribution
/// (independent real and imaginary parts for complex values).
pub trait SampleNormal: Scalar {
    fn sample_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl SampleNormal for f64 {
    fn sample_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl SampleNormal for C64 {
    fn sample_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }
}

pub fn random_vec<T: SampleNormal, R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<T> {
    (0..len).map(|_| T::sample_normal(rng)).collect()
}

pub fn random_matrix<T: SampleNormal, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<T> {
    Matrix::from_col_major(rows, cols, random_vec(rng, rows * cols)).expect("length matches")
}

/// # Panics
/// If `extents` is empty or contains a zero.
pub fn random_tensor<T: SampleNormal, R: Rng + ?Sized>(rng: &mut R, extents: &[usize]) -> Tensor<T> {
    let shape = Shape::new(extents.to_vec()).expect("valid extents");
    let data = random_vec(rng, shape.len());
    Tensor::from_vec(shape, data).expect("length matches")
}

/// `I + s G` with `G` standard normal; `s` controls how far from the
/// identity (and so how ill conditioned) the result is.
pub fn perturbed_identity<T: SampleNormal, R: Rng + ?Sized>(rng: &mut R, n: usize, s: f64) -> Matrix<T> {
    let g: Matrix<T> = random_matrix(rng, n, n);
    Matrix::from_fn(n, n, |i, j| {
        let d = if i == j { T::one() } else { T::zero() };
        d + g[(i, j)] * T::from_f64(s)
    })
}
