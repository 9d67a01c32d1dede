//! Linear and semilinear evolution problems `u' = (A_d + ... + A_1) u (+ f)`
//! on Cartesian grids, with the exact exponential solution and classical RK4.

use crate::apps::{time_once, SolverReport};
use crate::bases::{ada_stencil, StencilMatrix};
use crate::error::{arg_err, size_err, Result};
use crate::linalg::{expm, CsrMatrix, LinearOperator, Matrix};
use crate::scalar::rel_inf_error;
use crate::tensor::{Shape, Tensor};
use crate::tucker::{kronsum_apply, tucker};

/// Explicit part of the right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonlinearity {
    /// Purely linear problem.
    None,
    /// `1/(1+u^2) + Phi(t, x)` with the forcing that makes `e^t u_0` exact.
    ManufacturedSemilinear,
}

#[derive(Clone, Debug)]
pub struct EvolutionProblem {
    pub stencils: Vec<StencilMatrix>,
    pub u0: Tensor<f64>,
    pub t_final: f64,
    pub nonlinear: Nonlinearity,
}

impl EvolutionProblem {
    pub fn new(stencils: Vec<StencilMatrix>, u0: Tensor<f64>, t_final: f64, nonlinear: Nonlinearity) -> Result<Self> {
        if stencils.len() != u0.order() {
            return Err(size_err!("{} stencils for an order-{} initial value", stencils.len(), u0.order()));
        }
        for (mu, (s, &m)) in stencils.iter().zip(u0.extents()).enumerate() {
            if s.dim() != m || !s.matrix.is_square() || s.matrix.rows() != m {
                return Err(size_err!("stencil {mu} has size {}, extent is {m}", s.dim()));
            }
        }
        if !(t_final > 0.0) {
            return Err(arg_err!("final time must be positive, got {t_final}"));
        }
        Ok(Self { stencils, u0, t_final, nonlinear })
    }

    pub fn matrices(&self) -> Vec<Matrix<f64>> {
        self.stencils.iter().map(|s| s.matrix.clone()).collect()
    }

    pub fn grids(&self) -> Vec<Vec<f64>> {
        self.stencils.iter().map(|s| s.grid.clone()).collect()
    }
}

/// Coefficients of the advection-diffusion-absorption test problem.
pub const ADA_BETA: f64 = 2.0 / 3.0;
pub const ADA_ALPHA: f64 = 0.5;
pub const ADA_GAMMA: f64 = 0.01;

/// Advection-diffusion-absorption on `[0, 2]^d` with `u_0 = prod x (2-x)^2`.
pub fn ada_problem(n: &[usize], t_final: f64) -> Result<EvolutionProblem> {
    if n.iter().any(|&k| k < 3) {
        return Err(size_err!("advection-diffusion grids need at least 3 points, got {n:?}"));
    }
    let stencils: Vec<StencilMatrix> = n.iter().map(|&k| ada_stencil(k, ADA_BETA, ADA_ALPHA, ADA_GAMMA)).collect();
    let g = |x: f64| x * (2.0 - x) * (2.0 - x);
    let u0 = Tensor::from_fn(Shape::new(n.to_vec())?, |i| i.iter().zip(&stencils).map(|(&k, s)| g(s.grid[k])).product());
    EvolutionProblem::new(stencils, u0, t_final, Nonlinearity::None)
}

fn require_linear(prob: &EvolutionProblem) -> Result<()> {
    if prob.nonlinear != Nonlinearity::None {
        return Err(arg_err!("this integrator handles linear problems only"));
    }
    Ok(())
}

/// `U_0 x_1 exp(t A_1) ... x_d exp(t A_d)` in a single Tucker product.
pub fn linear_evolution_exact(prob: &EvolutionProblem) -> Result<Tensor<f64>> {
    require_linear(prob)?;
    let es = prob.stencils.iter().map(|s| expm(&s.matrix.scale(prob.t_final))).collect::<Result<Vec<_>>>()?;
    tucker(&prob.u0, &es)
}

/// How the right-hand side `A u` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formulation {
    /// Per-mode products on the tensor, no assembled matrix.
    Tensor,
    /// Assembled sparse Kronecker sum times `vec(U)`.
    Vector,
}

/// Classical RK4 with `steps` uniform steps for `u' = L u`.
pub fn rk4_linear(l: &dyn LinearOperator, u0: &[f64], t_final: f64, steps: usize) -> Vec<f64> {
    let n = u0.len();
    let h = t_final / steps as f64;
    let mut u = u0.to_vec();
    let (mut k, mut acc, mut stage) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for _ in 0..steps {
        l.apply(&u, &mut k);
        for i in 0..n {
            acc[i] = k[i];
            stage[i] = u[i] + 0.5 * h * k[i];
        }
        l.apply(&stage, &mut k);
        for i in 0..n {
            acc[i] += 2.0 * k[i];
            stage[i] = u[i] + 0.5 * h * k[i];
        }
        l.apply(&stage, &mut k);
        for i in 0..n {
            acc[i] += 2.0 * k[i];
            stage[i] = u[i] + h * k[i];
        }
        l.apply(&stage, &mut k);
        for i in 0..n {
            u[i] += h / 6.0 * (acc[i] + k[i]);
        }
    }
    u
}

struct KronSumOperator<'a> {
    extents: &'a [usize],
    mats: &'a [Matrix<f64>],
    len: usize,
}

impl LinearOperator for KronSumOperator<'_> {
    fn dim(&self) -> usize {
        self.len
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        kronsum_apply(x, self.extents, self.mats, y);
    }
}

/// Action of `A_d + ... + A_1` on `vec(U)` without assembling it.
pub(crate) fn kronsum_operator<'a>(extents: &'a [usize], mats: &'a [Matrix<f64>]) -> impl LinearOperator + 'a {
    KronSumOperator { extents, mats, len: extents.iter().product() }
}

/// RK4 for a linear problem, right-hand side in the chosen formulation.
pub fn rk4_evolve(prob: &EvolutionProblem, steps: usize, formulation: Formulation) -> Result<Tensor<f64>> {
    require_linear(prob)?;
    if steps == 0 {
        return Err(arg_err!("RK4 needs at least one step"));
    }
    let mats = prob.matrices();
    let u = match formulation {
        Formulation::Tensor => {
            let op = kronsum_operator(prob.u0.extents(), &mats);
            rk4_linear(&op, prob.u0.data(), prob.t_final, steps)
        }
        Formulation::Vector => {
            let csr = CsrMatrix::kronsum(&mats)?;
            rk4_linear(&csr, prob.u0.data(), prob.t_final, steps)
        }
    };
    Tensor::from_vec(prob.u0.shape().clone(), u)
}

#[derive(Clone, Debug)]
pub struct ExponentialOutcome {
    pub exact_seconds: f64,
    /// RK4 solve, error measured against the exponential solution.
    pub rk4: SolverReport,
}

/// Exponential solve of the ADA problem, then RK4 compared with it.
pub fn exponential_experiment(n: &[usize], t_final: f64, steps: usize, formulation: Formulation) -> Result<ExponentialOutcome> {
    let prob = ada_problem(n, t_final)?;
    let (exact, exact_seconds) = time_once(|| linear_evolution_exact(&prob));
    let exact = exact?;
    let (u, seconds) = time_once(|| rk4_evolve(&prob, steps, formulation));
    let error = rel_inf_error(u?.data(), exact.data());
    log::info!("exponential {n:?}: tucker {exact_seconds:.3}s, RK4 {steps} steps {seconds:.2}s, error {error:.3e}");
    Ok(ExponentialOutcome {
        exact_seconds,
        rk4: SolverReport { steps, avg_inner_iterations: None, wall_time_seconds: seconds, error_inf_relative: Some(error), converged: error.is_finite() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::Boundary;
    use crate::kron::kronsum;
    use crate::random::{random_matrix, random_tensor, seeded_rng};

    fn custom(mats: Vec<Matrix<f64>>, u0: Tensor<f64>, t: f64) -> EvolutionProblem {
        let stencils = mats
            .into_iter()
            .map(|m| StencilMatrix { grid: vec![0.0; m.rows()], matrix: m, left: Boundary::Dirichlet, right: Boundary::Dirichlet })
            .collect();
        EvolutionProblem::new(stencils, u0, t, Nonlinearity::None).unwrap()
    }

    #[test]
    fn exact_matches_kronsum_exponential() {
        let mut rng = seeded_rng(11);
        let mats: Vec<Matrix<f64>> = (0..3).map(|_| random_matrix(&mut rng, 3, 3)).collect();
        let u0: Tensor<f64> = random_tensor(&mut rng, &[3, 3, 3]);
        let prob = custom(mats.clone(), u0.clone(), 0.7);
        let got = linear_evolution_exact(&prob).unwrap();
        let big = expm(&kronsum(&mats).unwrap().scale(0.7)).unwrap();
        let expect: Vec<f64> = (0..27).map(|i| (0..27).map(|j| big[(i, j)] * u0.data()[j]).sum()).collect();
        assert!(rel_inf_error(got.data(), &expect) < 1e-10);
    }

    #[test]
    fn zero_operator_keeps_initial_value() {
        let u0: Tensor<f64> = random_tensor(&mut seeded_rng(12), &[2, 3]);
        let prob = custom(vec![Matrix::zeros(2, 2), Matrix::zeros(3, 3)], u0.clone(), 1.0);
        assert_eq!(linear_evolution_exact(&prob).unwrap(), u0);
        assert_eq!(rk4_evolve(&prob, 7, Formulation::Tensor).unwrap(), u0);
        assert_eq!(rk4_evolve(&prob, 7, Formulation::Vector).unwrap(), u0);
    }

    #[test]
    fn scalar_rk4_is_stability_polynomial() {
        let (lambda, t, steps) = (-3.0, 1.3, 9);
        let u0 = Tensor::from_vec(Shape::new(vec![1]).unwrap(), vec![2.0]).unwrap();
        let prob = custom(vec![Matrix::from_diag(&[lambda])], u0, t);
        let z = lambda * t / steps as f64;
        let r = 1.0 + z + z * z / 2.0 + z.powi(3) / 6.0 + z.powi(4) / 24.0;
        let expect = 2.0 * r.powi(steps as i32);
        let got = rk4_evolve(&prob, steps, Formulation::Tensor).unwrap().data()[0];
        assert!((got - expect).abs() <= 1e-14 * expect.abs());
    }

    #[test]
    fn one_dimensional_exact_is_expm_times_u0() {
        let mut rng = seeded_rng(13);
        let a: Matrix<f64> = random_matrix(&mut rng, 4, 4);
        let u0: Tensor<f64> = random_tensor(&mut rng, &[4]);
        let prob = custom(vec![a.clone()], u0.clone(), 0.4);
        let e = expm(&a.scale(0.4)).unwrap();
        let expect: Vec<f64> = (0..4).map(|i| (0..4).map(|j| e[(i, j)] * u0.data()[j]).sum()).collect();
        assert!(rel_inf_error(linear_evolution_exact(&prob).unwrap().data(), &expect) < 1e-13);
    }

    #[test]
    fn formulations_agree_on_ada() {
        let prob = ada_problem(&[6, 7, 8], 0.1).unwrap();
        let a = rk4_evolve(&prob, 20, Formulation::Tensor).unwrap();
        let b = rk4_evolve(&prob, 20, Formulation::Vector).unwrap();
        assert!(rel_inf_error(a.data(), b.data()) < 1e-12);
    }

    #[test]
    fn rk4_converges_at_fourth_order() {
        let prob = ada_problem(&[10, 11, 12], 0.5).unwrap();
        let exact = linear_evolution_exact(&prob).unwrap();
        let e1 = rel_inf_error(rk4_evolve(&prob, 100, Formulation::Tensor).unwrap().data(), exact.data());
        let e2 = rel_inf_error(rk4_evolve(&prob, 200, Formulation::Tensor).unwrap().data(), exact.data());
        let ratio = e1 / e2;
        assert!((12.0..=20.0).contains(&ratio), "{e1:e} {e2:e} ratio {ratio}");
    }

    #[test]
    fn rejects_bad_problems() {
        let u0: Tensor<f64> = random_tensor(&mut seeded_rng(14), &[3, 3]);
        let s = ada_stencil(3, 1.0, 1.0, 0.0);
        assert!(EvolutionProblem::new(vec![s.clone()], u0.clone(), 1.0, Nonlinearity::None).is_err());
        assert!(EvolutionProblem::new(vec![s.clone(), s.clone()], u0.clone(), 0.0, Nonlinearity::None).is_err());
        let p = EvolutionProblem::new(vec![s.clone(), s], u0, 1.0, Nonlinearity::ManufacturedSemilinear).unwrap();
        assert!(linear_evolution_exact(&p).is_err());
        assert!(ada_problem(&[2, 5], 1.0).is_err());
    }
}
