//! Backward-forward Euler for `u' = Laplace(u) + 1/(1+u^2) + Phi` on
//! `[0, 1]^d` with homogeneous Dirichlet conditions.
//!
//! Each step solves `M u_{k+1} = u_k + tau f(t_k, u_k)` with
//! `M = M_d (+) ... (+) M_1`, `M_mu = I/d - tau A_mu`.

use std::str::FromStr;

use crate::apps::evolution::{kronsum_operator, EvolutionProblem, Nonlinearity};
use crate::apps::{time_once, SolverReport};
use crate::bases::laplacian_stencil;
use crate::error::{arg_err, Error, Result};
use crate::linalg::{pcg, CsrMatrix, FnOperator, LinearOperator, Matrix, SparseCholesky};
use crate::scalar::rel_inf_error;
use crate::tensor::{Shape, Tensor};
use crate::tucker::{itucker, FactorizedStack};

/// Linear solver used in each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImexBackend {
    /// Sparse Cholesky of the assembled `M`, factored once.
    Direct,
    /// CG with the assembled sparse `M`.
    CgVector,
    /// CG with `M` applied mode by mode.
    CgTensor,
    /// As `CgTensor`, preconditioned by `(P_d x ... x P_1)^{-1}`,
    /// `P_mu = I - tau A_mu`.
    PcgTensor,
}

impl ImexBackend {
    pub const ALL: [ImexBackend; 4] = [Self::Direct, Self::CgVector, Self::CgTensor, Self::PcgTensor];

    pub fn name(self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::CgVector => "cg-vector",
            Self::CgTensor => "cg-tensor",
            Self::PcgTensor => "pcg-tensor",
        }
    }
}

impl FromStr for ImexBackend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| arg_err!("unknown backend '{s}'"))
    }
}

/// Default relative residual tolerance and iteration limit of the inner solves.
pub const IMEX_TOL: f64 = 1e-8;
pub const IMEX_MAXIT: usize = 1000;

fn bubble(x: f64) -> f64 {
    x * (1.0 - x)
}

/// Semilinear problem with `u_0 = prod x (1-x)` on `n[mu]` interior points.
pub fn imex_problem(n: &[usize], t_final: f64) -> Result<EvolutionProblem> {
    let stencils: Vec<_> = n.iter().map(|&k| laplacian_stencil(k)).collect();
    let u0 = Tensor::from_fn(Shape::new(n.to_vec())?, |i| i.iter().zip(&stencils).map(|(&k, s)| bubble(s.grid[k])).product());
    EvolutionProblem::new(stencils, u0, t_final, Nonlinearity::ManufacturedSemilinear)
}

/// `Laplace(u_0)` in closed form: `-2 sum_mu prod_{nu != mu} x_nu (1 - x_nu)`.
pub fn laplacian_u0(x: &[f64]) -> f64 {
    (0..x.len())
        .map(|mu| -2.0 * x.iter().enumerate().filter(|&(nu, _)| nu != mu).map(|(_, &v)| bubble(v)).product::<f64>())
        .sum()
}

/// `Phi = e^t u_0 - e^t Laplace(u_0) - 1/(1 + e^{2t} u_0^2)` on the grid.
pub fn manufactured_forcing(t: f64, grids: &[Vec<f64>]) -> Result<Tensor<f64>> {
    let shape = Shape::new(grids.iter().map(Vec::len).collect())?;
    let et = t.exp();
    let mut x = vec![0.0; grids.len()];
    Ok(Tensor::from_fn(shape, |i| {
        for (mu, &k) in i.iter().enumerate() {
            x[mu] = grids[mu][k];
        }
        let u0: f64 = x.iter().map(|&v| bubble(v)).product();
        et * u0 - et * laplacian_u0(&x) - 1.0 / (1.0 + et * et * u0 * u0)
    }))
}

enum Solver {
    Direct(SparseCholesky),
    Iterative { assembled: Option<CsrMatrix>, precond: Option<FactorizedStack<f64>> },
}

/// Integrates `prob` to its final time with step `tau`.
///
/// The report carries the mean inner iterations per step for iterative
/// backends and, for the manufactured problem, the relative max-norm error
/// against `e^t u_0`. An inner solve that reaches `maxit` clears
/// `converged` but does not abort the run.
pub fn imex_evolve(prob: &EvolutionProblem, tau: f64, backend: ImexBackend, tol: f64, maxit: usize) -> Result<(Tensor<f64>, SolverReport)> {
    if !(tau > 0.0) {
        return Err(arg_err!("step size must be positive, got {tau}"));
    }
    let steps_f = prob.t_final / tau;
    let steps = steps_f.round() as usize;
    if steps == 0 || (steps_f - steps as f64).abs() > 1e-9 * steps_f {
        return Err(arg_err!("final time {} is not a multiple of the step {tau}", prob.t_final));
    }
    let d = prob.stencils.len() as f64;
    let extents = prob.u0.extents().to_vec();
    let grids = prob.grids();
    let ms: Vec<Matrix<f64>> = prob
        .stencils
        .iter()
        .map(|s| Matrix::identity(s.dim()).scale(1.0 / d).sub(&s.matrix.scale(tau)))
        .collect::<Result<_>>()?;

    let run = || -> Result<(Vec<f64>, usize, bool)> {
        let solver = match backend {
            ImexBackend::Direct => Solver::Direct(SparseCholesky::factor(&CsrMatrix::kronsum(&ms)?)?),
            ImexBackend::CgVector => Solver::Iterative { assembled: Some(CsrMatrix::kronsum(&ms)?), precond: None },
            ImexBackend::CgTensor => Solver::Iterative { assembled: None, precond: None },
            ImexBackend::PcgTensor => {
                let ps = prob
                    .stencils
                    .iter()
                    .map(|s| Matrix::identity(s.dim()).sub(&s.matrix.scale(tau)))
                    .collect::<Result<Vec<_>>>()?;
                Solver::Iterative { assembled: None, precond: Some(FactorizedStack::new(&ps)?) }
            }
        };
        let tensor_op = kronsum_operator(&extents, &ms);
        let shape = prob.u0.shape().clone();
        let precond_op = match &solver {
            Solver::Iterative { precond: Some(ps), .. } => Some(FnOperator::new(shape.len(), move |x: &[f64], y: &mut [f64]| {
                let t = Tensor::from_vec(shape.clone(), x.to_vec()).expect("preconditioner input has the problem shape");
                y.copy_from_slice(itucker(&t, ps).expect("factors match the problem extents").data());
            })),
            _ => None,
        };

        let mut u = prob.u0.data().to_vec();
        let mut rhs = vec![0.0; u.len()];
        let (mut iterations, mut converged) = (0usize, true);
        for k in 0..steps {
            let t = k as f64 * tau;
            rhs.copy_from_slice(&u);
            if prob.nonlinear == Nonlinearity::ManufacturedSemilinear {
                let phi = manufactured_forcing(t, &grids)?;
                for ((r, &uk), &p) in rhs.iter_mut().zip(&u).zip(phi.data()) {
                    *r += tau * (1.0 / (1.0 + uk * uk) + p);
                }
            }
            u = match &solver {
                Solver::Direct(chol) => chol.solve(&rhs),
                Solver::Iterative { assembled, .. } => {
                    let a: &dyn LinearOperator = match assembled {
                        Some(csr) => csr,
                        None => &tensor_op,
                    };
                    let pc = precond_op.as_ref().map(|p| p as &dyn LinearOperator);
                    let (x, rep) = pcg(a, &rhs, &u, tol, maxit, pc)?;
                    iterations += rep.iterations;
                    converged &= rep.converged;
                    x
                }
            };
        }
        Ok((u, iterations, converged))
    };
    let (result, seconds) = time_once(run);
    let (u, iterations, converged) = result?;
    let u = Tensor::from_vec(prob.u0.shape().clone(), u)?;
    let error = (prob.nonlinear == Nonlinearity::ManufacturedSemilinear).then(|| {
        let exact = prob.u0.scale(prob.t_final.exp());
        rel_inf_error(u.data(), exact.data())
    });
    let avg = (backend != ImexBackend::Direct).then(|| iterations as f64 / steps as f64);
    log::info!("imex {} {extents:?}: {steps} steps in {seconds:.2}s, avg iterations {avg:?}, error {error:?}", backend.name());
    Ok((u, SolverReport { steps, avg_inner_iterations: avg, wall_time_seconds: seconds, error_inf_relative: error, converged }))
}
