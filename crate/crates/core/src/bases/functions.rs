//! Normalized, scaled Hermite and generalized Laguerre functions and the
//! per-direction transform matrices built from them.

use crate::bases::quadrature::{gauss_hermite, gauss_laguerre_generalized, QuadRule};
use crate::bases::recurrence::{hermite_functions, laguerre_functions};
use crate::error::{arg_err, Error, Result};
use crate::linalg::Matrix;

/// `m x len(x)` matrix with `H^beta_i(x_l) = sqrt(beta) psi_i(beta x_l)` at
/// `(i, l)`, where `psi_i` are the Hermite functions orthonormal in `L^2(R)`.
pub fn hermite_basis_matrix(m: usize, beta: f64, x: &[f64]) -> Matrix<f64> {
    let mut out = Matrix::zeros(m, x.len());
    let sb = beta.sqrt();
    for (l, &xl) in x.iter().enumerate() {
        let col = &mut out.data_mut()[l * m..(l + 1) * m];
        hermite_functions(beta * xl, col);
        col.iter_mut().for_each(|v| *v *= sb);
    }
    out
}

/// `m x len(x)` matrix of the scaled generalized Laguerre functions
/// `sqrt(beta) l_i(beta x)`, orthonormal in `L^2(R+)`.
pub fn laguerre_basis_matrix(m: usize, alpha: f64, beta: f64, x: &[f64]) -> Result<Matrix<f64>> {
    if !(alpha > -1.0) {
        return Err(arg_err!("Laguerre exponent must exceed -1, got {alpha}"));
    }
    if let Some(&bad) = x.iter().find(|&&v| v < 0.0 || (v == 0.0 && alpha < 0.0) || v.is_nan()) {
        return Err(Error::Domain(format!("Laguerre functions with alpha = {alpha} are not finite at x = {bad}")));
    }
    let mut out = Matrix::zeros(m, x.len());
    let sb = beta.sqrt();
    for (l, &xl) in x.iter().enumerate() {
        let col = &mut out.data_mut()[l * m..(l + 1) * m];
        laguerre_functions(alpha, beta * xl, col);
        col.iter_mut().for_each(|v| *v *= sb);
    }
    Ok(out)
}

/// `beta = sqrt(2m + 1) / b`, placing the `m` Hermite nodes in `[-b, b]`.
pub fn hermite_beta(m: usize, b: f64) -> f64 {
    (2.0 * m as f64 + 1.0).sqrt() / b
}

/// `beta = (4m + 2 alpha + 2) / b`, placing the Laguerre nodes in `[0, b]`.
/// The estimate behind it is asymptotic and meant for `|alpha| >= 1/4`.
pub fn laguerre_beta(m: usize, alpha: f64, b: f64) -> f64 {
    if alpha.abs() < 0.25 || alpha <= -1.0 {
        log::warn!("Laguerre scaling estimate used outside |alpha| >= 1/4, alpha > -1 (alpha = {alpha})");
    }
    (4.0 * m as f64 + 2.0 * alpha + 2.0) / b
}

/// Quadrature rule and transform matrices for one direction.
#[derive(Clone, Debug)]
pub struct BasisPlan {
    pub rule: QuadRule,
    /// `m x q`: `phi_i(xi_k)` at `(i, k)` (real families, so no conjugate).
    pub analysis: Matrix<f64>,
    /// `n x m`: `phi_i(x_l)` at `(l, i)`.
    pub synthesis: Matrix<f64>,
    pub beta: f64,
    pub alpha: Option<f64>,
}

impl BasisPlan {
    /// Hermite plan with `m` functions and nodes, scaled to `[-b, b]`.
    pub fn hermite(m: usize, b: f64, eval_points: &[f64]) -> Result<Self> {
        let beta = hermite_beta(m, b);
        let rule = gauss_hermite(m, beta)?;
        let analysis = hermite_basis_matrix(m, beta, &rule.nodes);
        let synthesis = hermite_basis_matrix(m, beta, eval_points).transpose();
        Ok(Self { rule, analysis, synthesis, beta, alpha: None })
    }

    /// Generalized Laguerre plan with `m` functions and nodes, scaled to
    /// `[0, b]`.
    pub fn laguerre(m: usize, alpha: f64, b: f64, eval_points: &[f64]) -> Result<Self> {
        let beta = laguerre_beta(m, alpha, b);
        let rule = gauss_laguerre_generalized(m, alpha, beta)?;
        let analysis = laguerre_basis_matrix(m, alpha, beta, &rule.nodes)?;
        let synthesis = laguerre_basis_matrix(m, alpha, beta, eval_points)?.transpose();
        Ok(Self { rule, analysis, synthesis, beta, alpha: Some(alpha) })
    }

    pub fn basis_count(&self) -> usize {
        self.analysis.rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// `max |Psi W Psi^T - I|` with `W` the Lebesgue weights of the rule.
    fn gram_defect(psi: &Matrix<f64>, w: &[f64]) -> f64 {
        let m = psi.rows();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                let s: f64 = (0..w.len()).map(|k| psi[(i, k)] * psi[(j, k)] * w[k]).sum();
                worst = worst.max((s - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }

    #[test]
    fn first_hermite_function() {
        let beta = 1.7;
        let x = [-0.4, 0.0, 1.3];
        let h = hermite_basis_matrix(3, beta, &x);
        for (l, &xl) in x.iter().enumerate() {
            let expect = (beta / PI.sqrt()).sqrt() * (-beta * beta * xl * xl / 2.0).exp();
            assert!((h[(0, l)] - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn first_laguerre_function() {
        let (alpha, beta) = (4.0, 2.5);
        let x = [0.0, 0.3, 2.0];
        let l = laguerre_basis_matrix(2, alpha, beta, &x).unwrap();
        for (k, &xk) in x.iter().enumerate() {
            let bx: f64 = beta * xk;
            let expect = (beta / libm::tgamma(1.0 + alpha)).sqrt() * bx.powf(alpha / 2.0) * (-bx / 2.0).exp();
            assert!((l[(0, k)] - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn laguerre_domain_errors() {
        assert!(matches!(laguerre_basis_matrix(3, 1.0, 1.0, &[-0.1]), Err(Error::Domain(_))));
        assert!(matches!(laguerre_basis_matrix(3, -0.5, 1.0, &[0.0]), Err(Error::Domain(_))));
        assert!(laguerre_basis_matrix(3, 0.0, 1.0, &[0.0]).is_ok());
    }

    #[test]
    fn hermite_discrete_orthonormality() {
        for m in [1, 2, 7, 40, 69, 120] {
            let plan = BasisPlan::hermite(m, 4.0, &[]).unwrap();
            let d = gram_defect(&plan.analysis, &plan.rule.function_weights);
            assert!(d < 1e-10, "m={m}: {d}");
        }
    }

    #[test]
    fn laguerre_discrete_orthonormality() {
        for &(m, alpha) in &[(1, 4.0), (5, 0.5), (31, 4.0), (105, 4.0), (120, 4.0), (60, -0.5)] {
            let plan = BasisPlan::laguerre(m, alpha, 11.0, &[]).unwrap();
            let d = gram_defect(&plan.analysis, &plan.rule.function_weights);
            assert!(d < 1e-10, "m={m} alpha={alpha}: {d}");
        }
    }

    #[test]
    fn large_bases_are_finite() {
        let x: Vec<f64> = (0..301).map(|l| -4.0 + 8.0 * l as f64 / 300.0).collect();
        let h = hermite_basis_matrix(40, 81f64.sqrt() / 4.0, &x);
        assert!(h.is_finite());
        let y: Vec<f64> = (0..301).map(|l| 11.0 * l as f64 / 300.0).collect();
        let l = laguerre_basis_matrix(105, 4.0, laguerre_beta(105, 4.0, 11.0), &y).unwrap();
        assert!(l.is_finite());
    }

    #[test]
    fn plan_shapes() {
        let plan = BasisPlan::hermite(6, 4.0, &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!((plan.analysis.rows(), plan.analysis.cols()), (6, 6));
        assert_eq!((plan.synthesis.rows(), plan.synthesis.cols()), (3, 6));
        assert_eq!(plan.basis_count(), 6);
    }
}
