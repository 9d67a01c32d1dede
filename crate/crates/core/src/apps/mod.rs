//! Experiment drivers: mixed pseudospectral transforms, tensor-product
//! interpolation, exponential and IMEX time integration, and benchmarks.

pub mod bench;
pub mod evolution;
pub mod imex;
pub mod interp;
pub mod spectral;

use std::time::Instant;

use crate::bases::chebyshev_points_weights;
use crate::error::{size_err, Result};

/// How the points of one direction are placed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridKind {
    /// `n` points spanning the closed interval, endpoints included.
    Uniform,
    /// Chebyshev points of the first kind mapped to the interval.
    Chebyshev,
}

/// Cartesian grid: one interval and point count per direction; the
/// tensor built on it has the first direction varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub extents: Vec<usize>,
    pub intervals: Vec<(f64, f64)>,
    pub kind: GridKind,
}

impl GridSpec {
    pub fn new(extents: Vec<usize>, intervals: Vec<(f64, f64)>, kind: GridKind) -> Result<Self> {
        if extents.len() != intervals.len() || extents.is_empty() {
            return Err(size_err!("{} extents for {} intervals", extents.len(), intervals.len()));
        }
        if extents.contains(&0) {
            return Err(size_err!("grid extents must be positive"));
        }
        if intervals.iter().any(|&(a, b)| !(b > a)) {
            return Err(size_err!("grid intervals must be nonempty"));
        }
        Ok(Self { extents, intervals, kind })
    }

    /// Same interval and kind in every direction.
    pub fn cube(extents: Vec<usize>, a: f64, b: f64, kind: GridKind) -> Result<Self> {
        let d = extents.len();
        Self::new(extents, vec![(a, b); d], kind)
    }

    pub fn points(&self, mu: usize) -> Vec<f64> {
        let (a, b) = self.intervals[mu];
        let n = self.extents[mu];
        match self.kind {
            GridKind::Uniform => linspace(a, b, n),
            GridKind::Chebyshev => {
                chebyshev_points_weights(n).0.into_iter().map(|x| a + (b - a) * (x + 1.0) / 2.0).collect()
            }
        }
    }
}

/// `n` equispaced points from `a` to `b` inclusive (`a` alone if `n == 1`).
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|l| if l + 1 == n { b } else { a + h * l as f64 }).collect()
}

/// Summary of one driver run.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverReport {
    pub steps: usize,
    /// Mean inner (P)CG iterations per step, for iterative solvers.
    pub avg_inner_iterations: Option<f64>,
    pub wall_time_seconds: f64,
    /// Relative max-norm error against the reference, when one exists.
    pub error_inf_relative: Option<f64>,
    /// False if some inner solve hit its iteration limit.
    pub converged: bool,
}

/// Wall-clock seconds of one call.
pub fn time_once<R>(f: impl FnOnce() -> R) -> (R, f64) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed().as_secs_f64())
}

/// Median wall-clock seconds of `reps` calls after one discarded warm-up.
pub fn median_time<R>(reps: usize, mut f: impl FnMut() -> R) -> (R, f64) {
    let mut last = f();
    let mut times = Vec::with_capacity(reps.max(1));
    for _ in 0..reps.max(1) {
        let (r, t) = time_once(&mut f);
        last = r;
        times.push(t);
    }
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median = if times.len() % 2 == 1 { times[mid] } else { 0.5 * (times[mid - 1] + times[mid]) };
    (last, median)
}

/// `max |a - b| / max |b|` over equal-length slices.
pub fn relative_max_error(a: &[f64], b: &[f64]) -> f64 {
    crate::scalar::rel_inf_error(a, b)
}
