//! Dense discrete Fourier matrices for trigonometric resampling.
//!
//! Samples live on `m` equispaced points of the half-open period `[a, b)`.
//! Coefficients are plain trigonometric coefficients (`1/m` normalization);
//! for even `m` the Nyquist coefficient is split evenly between `+m/2` and
//! `-m/2`, which makes the interpolant of real data real.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::Matrix;

#[derive(Clone, Debug)]
pub struct DftPair {
    /// `m x m`: samples to coefficients.
    pub analysis: Matrix<Complex64>,
    /// `n x m`: coefficients to values on `n` equispaced points of `[a, b)`.
    pub synthesis: Matrix<Complex64>,
}

/// `count` equispaced points `a + j (b - a) / count`, `j = 0..count`.
pub fn fourier_nodes(count: usize, a: f64, b: f64) -> Vec<f64> {
    (0..count).map(|j| a + (b - a) * j as f64 / count as f64).collect()
}

/// Signed frequency of coefficient slot `k` in FFT ordering.
fn frequency(k: usize, m: usize) -> f64 {
    if 2 * k <= m {
        k as f64
    } else {
        k as f64 - m as f64
    }
}

/// Analysis and synthesis matrices for resampling `m` samples to `n` points.
///
/// The interval only fixes where the points sit; both matrices depend on
/// `(x - a) / (b - a)` alone.
pub fn dft_matrices(m: usize, n: usize, a: f64, b: f64) -> DftPair {
    assert!(m >= 1 && n >= 1, "dft_matrices needs at least one sample and one point");
    debug_assert!(b > a);
    let inv_m = 1.0 / m as f64;
    let analysis = Matrix::from_fn(m, m, |k, j| {
        let phase = -2.0 * PI * frequency(k, m) * j as f64 * inv_m;
        Complex64::from_polar(inv_m, phase)
    });
    let nodes = fourier_nodes(n, a, b);
    let synthesis = fourier_synthesis_at(m, &nodes, a, b);
    DftPair { analysis, synthesis }
}

/// `len(x) x m` matrix evaluating the trigonometric interpolant with `m`
/// coefficients (period `[a, b)`) at arbitrary points `x`.
pub fn fourier_synthesis_at(m: usize, x: &[f64], a: f64, b: f64) -> Matrix<Complex64> {
    let nyquist = m.is_multiple_of(2).then_some(m / 2);
    Matrix::from_fn(x.len(), m, |l, k| {
        let theta = 2.0 * PI * (x[l] - a) / (b - a);
        if Some(k) == nyquist {
            // (e^{i m/2 θ} + e^{-i m/2 θ}) / 2
            Complex64::new((m as f64 / 2.0 * theta).cos(), 0.0)
        } else {
            Complex64::from_polar(1.0, frequency(k, m) * theta)
        }
    })
}

/// Real `len(x) x m` matrix taking `m` samples on `[a, b)` to the values of
/// their trigonometric interpolant at `x`.
pub fn resample_at(m: usize, x: &[f64], a: f64, b: f64) -> Matrix<f64> {
    let analysis = dft_matrices(m, 1, a, b).analysis;
    fourier_synthesis_at(m, x, a, b).matmul(&analysis).expect("conformal by construction").map(|z| z.re)
}

/// Real `n x m` matrix mapping `m` periodic samples to the trigonometric
/// interpolant on `n` points; the dense counterpart of FFT resampling.
pub fn resample_matrix(m: usize, n: usize) -> Matrix<f64> {
    let pair = dft_matrices(m, n, 0.0, 1.0);
    pair.synthesis.matmul(&pair.analysis).expect("conformal by construction").map(|z| z.re)
}
