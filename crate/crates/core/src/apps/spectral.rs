//! Hermite-Laguerre-Fourier pseudospectral decomposition of a trivariate
//! function: coefficients by quadrature, evaluation on a uniform grid.

use crate::apps::{linspace, time_once, SolverReport};
use crate::bases::BasisPlan;
use crate::error::{size_err, Result};
use crate::linalg::{fourier_nodes, resample_at, Matrix};
use crate::tensor::{ColumnOperator, Identity, Shape, Tensor};
use crate::tucker::tuckerfun;

/// Domain `[-b1, b1] x [0, b2] x [a3, b3)` and evaluation grid sizes.
#[derive(Clone, Debug, PartialEq)]
pub struct HlfParams {
    pub alpha: f64,
    pub b1: f64,
    pub b2: f64,
    pub a3: f64,
    pub b3: f64,
    pub n: [usize; 3],
}

impl Default for HlfParams {
    fn default() -> Self {
        Self { alpha: 4.0, b1: 4.0, b2: 11.0, a3: -1.0, b3: 1.0, n: [301, 301, 301] }
    }
}

/// Separable test function `g1(x1) g2(x2) g3(x3)` with
/// `g1 = sin(20 x) e^{-x^2}`, `g2 = x^2 sin(10 x) e^{-2x}`,
/// `g3 = 1 / (sin(2 pi x) + 2)`.
pub fn hlf_target_factors() -> [fn(f64) -> f64; 3] {
    [
        |x| (20.0 * x).sin() * (-x * x).exp(),
        |x| x * x * (10.0 * x).sin() * (-2.0 * x).exp(),
        |x| 1.0 / ((2.0 * std::f64::consts::PI * x).sin() + 2.0),
    ]
}

pub fn hlf_target(x1: f64, x2: f64, x3: f64) -> f64 {
    let [g1, g2, g3] = hlf_target_factors();
    g1(x1) * g2(x2) * g3(x3)
}

/// Everything needed to transform with `m = (m1, m2, m3)` basis functions.
#[derive(Clone, Debug)]
pub struct HlfSetup {
    pub hermite: BasisPlan,
    pub laguerre: BasisPlan,
    /// `m3` Fourier nodes on `[a3, b3)`.
    pub fourier_nodes: Vec<f64>,
    /// Evaluation points per direction.
    pub eval: [Vec<f64>; 3],
    /// `n3 x m3` trigonometric resampling matrix.
    pub resample: Matrix<f64>,
}

impl HlfSetup {
    pub fn new(m: [usize; 3], p: &HlfParams) -> Result<Self> {
        if m.contains(&0) || p.n.contains(&0) {
            return Err(size_err!("basis and grid sizes must be positive"));
        }
        let eval = [linspace(-p.b1, p.b1, p.n[0]), linspace(0.0, p.b2, p.n[1]), linspace(p.a3, p.b3, p.n[2])];
        let hermite = BasisPlan::hermite(m[0], p.b1, &eval[0])?;
        let laguerre = BasisPlan::laguerre(m[1], p.alpha, p.b2, &eval[1])?;
        let resample = resample_at(m[2], &eval[2], p.a3, p.b3);
        Ok(Self { hermite, laguerre, fourier_nodes: fourier_nodes(m[2], p.a3, p.b3), eval, resample })
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.hermite.basis_count(), self.laguerre.basis_count(), self.fourier_nodes.len()]
    }

    /// `f(xi1, xi2, xi3) w1 w2` on the quadrature grid, with the Lebesgue
    /// quadrature weights of the first two directions.
    pub fn weighted_samples(&self, f: impl Fn(f64, f64, f64) -> f64) -> Tensor<f64> {
        let (r1, r2) = (&self.hermite.rule, &self.laguerre.rule);
        let shape = Shape::new(self.sizes().to_vec()).expect("positive sizes");
        Tensor::from_fn(shape, |i| {
            f(r1.nodes[i[0]], r2.nodes[i[1]], self.fourier_nodes[i[2]]) * r1.function_weights[i[0]] * r2.function_weights[i[1]]
        })
    }
}

/// Coefficients `F_W x_1 Psi_1 x_2 Psi_2`, third mode left as samples (the
/// Fourier step is folded into the synthesis resampling).
pub fn hlf_analysis(fw: &Tensor<f64>, psi1: &Matrix<f64>, psi2: &Matrix<f64>) -> Result<Tensor<f64>> {
    tuckerfun(fw, &[psi1, psi2, &Identity])
}

/// Evaluates coefficients with `Phi_1`, `Phi_2` and trigonometric
/// resampling in the third direction.
pub fn hlf_synthesis(
    fhat: &Tensor<f64>,
    phi1: &Matrix<f64>,
    phi2: &Matrix<f64>,
    resample: &dyn ColumnOperator<f64>,
) -> Result<Tensor<f64>> {
    tuckerfun(fhat, &[phi1, phi2, resample])
}

#[derive(Clone, Debug)]
pub struct HlfOutcome {
    pub m: [usize; 3],
    /// `max |f - f~| / max |f|` over the evaluation grid.
    pub error: f64,
    pub report: SolverReport,
}

/// Approximates [`hlf_target`] with `m` basis functions and measures the
/// error on the evaluation grid. Only the transform is timed.
pub fn hlf_experiment(m: [usize; 3], p: &HlfParams) -> Result<HlfOutcome> {
    let setup = HlfSetup::new(m, p)?;
    let fw = setup.weighted_samples(hlf_target);
    let (approx, seconds) = time_once(|| -> Result<Tensor<f64>> {
        let fhat = hlf_analysis(&fw, &setup.hermite.analysis, &setup.laguerre.analysis)?;
        hlf_synthesis(&fhat, &setup.hermite.synthesis, &setup.laguerre.synthesis, &setup.resample)
    });
    let approx = approx?;
    let [g1, g2, g3] = hlf_target_factors();
    let v: [Vec<f64>; 3] = [
        setup.eval[0].iter().map(|&x| g1(x)).collect(),
        setup.eval[1].iter().map(|&x| g2(x)).collect(),
        setup.eval[2].iter().map(|&x| g3(x)).collect(),
    ];
    let (mut diff, mut scale) = (0.0f64, 0.0f64);
    let mut it = approx.data().iter();
    for &c in &v[2] {
        for &b in &v[1] {
            let bc = b * c;
            for &a in &v[0] {
                let exact = a * bc;
                let got = *it.next().expect("grid size");
                diff = diff.max((exact - got).abs());
                scale = scale.max(exact.abs());
            }
        }
    }
    let error = diff / scale;
    log::info!("HLF m={m:?}: error {error:.3e}, transform {seconds:.3}s");
    Ok(HlfOutcome {
        m,
        error,
        report: SolverReport { steps: 1, avg_inner_iterations: None, wall_time_seconds: seconds, error_inf_relative: Some(error), converged: true },
    })
}
