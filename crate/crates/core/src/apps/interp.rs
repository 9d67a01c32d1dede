//! Tensor-product barycentric interpolation on Chebyshev grids in
//! `[-1, 1]^d`.

use crate::apps::{linspace, time_once, SolverReport};
use crate::bases::{barycentric_matrix, chebyshev_points_weights};
use crate::error::{size_err, Error, Result};
use crate::linalg::Matrix;
use crate::tensor::{Shape, Tensor};
use crate::tucker::tucker;

/// `1 / (1 + 16 |x|^2)`.
pub fn runge(x: &[f64]) -> f64 {
    1.0 / (1.0 + 16.0 * x.iter().map(|v| v * v).sum::<f64>())
}

#[derive(Clone, Debug)]
pub struct InterpOutcome {
    /// Interpolant on the uniform evaluation grid.
    pub values: Tensor<f64>,
    /// `max |f - p| / max |f|` on the evaluation grid.
    pub error: f64,
    pub report: SolverReport,
}

/// Peak bytes of [`lagrange_interp`] for node counts `m` and evaluation
/// counts `n` (sample tensor plus two working buffers).
pub fn interp_memory_bytes(m: &[usize], n: &[usize]) -> u64 {
    let mut extents: Vec<usize> = m.to_vec();
    let mut peak = 0u64;
    let sample: u64 = m.iter().map(|&v| v as u64).product();
    for mu in 0..m.len() {
        let before: u64 = extents.iter().map(|&v| v as u64).product();
        extents[mu] = n[mu];
        let after: u64 = extents.iter().map(|&v| v as u64).product();
        peak = peak.max(before + after);
    }
    8 * (sample + peak)
}

/// Samples `f` on the Chebyshev grid with `m[mu]` nodes per direction,
/// evaluates the interpolant on `n[mu]` uniform points of `[-1, 1]` with
/// one Tucker product, and reports the relative max-norm error.
///
/// Fails with [`Error::MemoryCap`] before allocating if the estimated
/// footprint exceeds `mem_cap` bytes.
pub fn lagrange_interp(f: impl Fn(&[f64]) -> f64, m: &[usize], n: &[usize], mem_cap: u64) -> Result<InterpOutcome> {
    if m.len() != n.len() || m.is_empty() {
        return Err(size_err!("{} node counts for {} evaluation counts", m.len(), n.len()));
    }
    let need = interp_memory_bytes(m, n);
    if need > mem_cap {
        return Err(Error::MemoryCap { requested: need, cap: mem_cap });
    }
    let d = m.len();
    let cheb: Vec<(Vec<f64>, Vec<f64>)> = m.iter().map(|&k| chebyshev_points_weights(k)).collect();
    let eval: Vec<Vec<f64>> = n.iter().map(|&k| linspace(-1.0, 1.0, k)).collect();
    let ls = cheb
        .iter()
        .zip(&eval)
        .map(|((x, w), e)| barycentric_matrix(x, w, e))
        .collect::<Result<Vec<Matrix<f64>>>>()?;
    let mut point = vec![0.0; d];
    let samples = Tensor::from_fn(Shape::new(m.to_vec())?, |i| {
        for (mu, &k) in i.iter().enumerate() {
            point[mu] = cheb[mu].0[k];
        }
        f(&point)
    });
    let (values, seconds) = time_once(|| tucker(&samples, &ls));
    let values = values?;
    drop(samples);
    let (mut diff, mut scale) = (0.0f64, 0.0f64);
    let mut idx = vec![0usize; d];
    for &p in values.data() {
        for (mu, &k) in idx.iter().enumerate() {
            point[mu] = eval[mu][k];
        }
        let exact = f(&point);
        diff = diff.max((exact - p).abs());
        scale = scale.max(exact.abs());
        for (k, &len) in idx.iter_mut().zip(n) {
            *k += 1;
            if *k < len {
                break;
            }
            *k = 0;
        }
    }
    let error = diff / scale;
    log::info!("interpolation m={m:?}: error {error:.3e}, tucker {seconds:.3}s");
    Ok(InterpOutcome {
        values,
        error,
        report: SolverReport { steps: 1, avg_inner_iterations: None, wall_time_seconds: seconds, error_inf_relative: Some(error), converged: true },
    })
}
