//! Gauss-Hermite and generalized Gauss-Laguerre rules by Golub-Welsch.
//!
//! Nodes are eigenvalues of the Jacobi matrix, refined by one Newton step on
//! the orthonormal recurrence. Weights use the Christoffel form
//! `1 / sum_n p_n(y)^2`, which keeps full relative accuracy for the tiny
//! weights in the tails (squared eigenvector components do not).

use crate::bases::recurrence::{hermite_ratio, hermite_sq_sum, laguerre_ratio, laguerre_sq_sum};
use crate::error::{arg_err, Result};
use crate::linalg::{symtridiag_eig, TridiagSym};

/// `m`-point Gaussian rule. `weights` integrate against the rule's weight
/// function; `function_weights` integrate plain (Lebesgue) integrands, i.e.
/// `weights` divided by the weight function at each node.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub function_weights: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn check(m: usize, beta: f64) -> Result<()> {
    if m == 0 {
        return Err(arg_err!("a quadrature rule needs at least one node"));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(arg_err!("scaling parameter must be positive, got {beta}"));
    }
    Ok(())
}

/// Rule for the weight `exp(-beta^2 x^2)` on the real line.
pub fn gauss_hermite(m: usize, beta: f64) -> Result<QuadRule> {
    check(m, beta)?;
    let diag = vec![0.0; m];
    let offdiag = (1..m).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let eig = symtridiag_eig(&TridiagSym::new(diag, offdiag)?)?;
    let mut y = eig.values;
    for yk in y.iter_mut() {
        let delta = hermite_ratio(m, *yk) / (2.0 * m as f64).sqrt();
        if delta.abs() <= 1e-8 * (1.0 + yk.abs()) {
            *yk -= delta;
        }
    }
    // Enforce exact symmetry about the origin.
    for k in 0..m / 2 {
        let s = 0.5 * (y[m - 1 - k] - y[k]);
        y[k] = -s;
        y[m - 1 - k] = s;
    }
    if m % 2 == 1 {
        y[m / 2] = 0.0;
    }
    let (mut nodes, mut weights, mut function_weights) = (Vec::with_capacity(m), Vec::with_capacity(m), Vec::with_capacity(m));
    for &yk in &y {
        // sum_n psi_n(y)^2 = exp(-y^2) sum_n p_n(y)^2
        let log_sum = hermite_sq_sum(m, yk);
        weights.push((-log_sum).exp() / beta);
        function_weights.push((yk * yk - log_sum).exp() / beta);
        nodes.push(yk / beta);
    }
    Ok(QuadRule { nodes, weights, function_weights })
}

/// Rule for the weight `(beta x)^alpha exp(-beta x)` on the half line.
pub fn gauss_laguerre_generalized(m: usize, alpha: f64, beta: f64) -> Result<QuadRule> {
    check(m, beta)?;
    if !(alpha > -1.0) {
        return Err(arg_err!("Laguerre exponent must exceed -1, got {alpha}"));
    }
    let diag = (0..m).map(|n| 2.0 * n as f64 + 1.0 + alpha).collect();
    let offdiag = (1..m).map(|n| (n as f64 * (n as f64 + alpha)).sqrt()).collect();
    let eig = symtridiag_eig(&TridiagSym::new(diag, offdiag)?)?;
    let mf = m as f64;
    let (mut nodes, mut weights, mut function_weights) = (Vec::with_capacity(m), Vec::with_capacity(m), Vec::with_capacity(m));
    for mut yk in eig.values {
        // y p_m' = m p_m - sqrt(m (m + alpha)) p_{m-1}
        let r = laguerre_ratio(m, alpha, yk);
        let delta = yk * r / (mf * r - (mf * (mf + alpha)).sqrt());
        if delta.is_finite() && delta.abs() <= 1e-8 * yk.abs() {
            yk -= delta;
        }
        let log_sum = laguerre_sq_sum(m, alpha, yk);
        // function weight: 1 / sum_n l_n(y)^2 with l_n = p_n y^{alpha/2} e^{-y/2}
        let log_fw = -log_sum - alpha * yk.ln() + yk;
        function_weights.push(log_fw.exp() / beta);
        weights.push((-log_sum).exp() / beta);
        nodes.push(yk / beta);
    }
    Ok(QuadRule { nodes, weights, function_weights })
}
