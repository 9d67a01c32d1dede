use crate::error::{size_err, Error, Result};
use crate::linalg::Matrix;

/// Square linear map on `R^N`.
pub trait LinearOperator {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// Operator backed by a closure.
pub struct FnOperator<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64])> FnOperator<F> {
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(&[f64], &mut [f64])> LinearOperator for FnOperator<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        (self.f)(x, y)
    }
}

impl LinearOperator for Matrix<f64> {
    fn dim(&self) -> usize {
        self.rows()
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (j, &xj) in x.iter().enumerate().take(self.cols()) {
            for (yi, &a) in y.iter_mut().zip(self.column(j)) {
                *yi += a * xj;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CgReport {
    pub iterations: usize,
    /// `||b - A x|| / ||b||` of the returned iterate.
    pub final_residual: f64,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Preconditioned conjugate gradient from the warm start `x0`.
///
/// Stops when the recurrence residual satisfies `||r|| <= tol ||b||`; the
/// returned report carries the true residual of the final iterate.
/// Hitting `maxit` is reported through `converged = false`.
pub fn pcg(
    a: &dyn LinearOperator,
    b: &[f64],
    x0: &[f64],
    tol: f64,
    maxit: usize,
    minv: Option<&dyn LinearOperator>,
) -> Result<(Vec<f64>, CgReport)> {
    let n = a.dim();
    if b.len() != n || x0.len() != n || minv.is_some_and(|m| m.dim() != n) {
        return Err(size_err!("pcg operands do not share dimension {n}"));
    }
    let bnorm = norm(b);
    let mut x = x0.to_vec();
    if bnorm == 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return Ok((x, CgReport { iterations: 0, final_residual: 0.0, converged: true }));
    }
    let target = tol * bnorm;

    let mut ax = vec![0.0; n];
    a.apply(&x, &mut ax);
    let mut r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    let mut z = vec![0.0; n];
    let precondition = |r: &[f64], z: &mut [f64]| match minv {
        Some(m) => m.apply(r, z),
        None => z.copy_from_slice(r),
    };

    let mut iterations = 0;
    let mut converged = norm(&r) <= target;
    if !converged {
        precondition(&r, &mut z);
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut ap = vec![0.0; n];
        while iterations < maxit {
            a.apply(&p, &mut ap);
            let curvature = dot(&p, &ap);
            if !(curvature > 0.0) || !(rz > 0.0) {
                return Err(Error::Numerical(format!(
                    "pcg breakdown at iteration {iterations}: operator or preconditioner is not positive definite"
                )));
            }
            let alpha = rz / curvature;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            iterations += 1;
            if norm(&r) <= target {
                converged = true;
                break;
            }
            precondition(&r, &mut z);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
    }

    a.apply(&x, &mut ax);
    let true_res = b.iter().zip(&ax).map(|(bi, ai)| (bi - ai).powi(2)).sum::<f64>().sqrt() / bnorm;
    Ok((x, CgReport { iterations, final_residual: true_res, converged }))
}
