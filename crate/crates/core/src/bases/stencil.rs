//! Second-order centered finite-difference matrices on uniform grids.

use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// Homogeneous Dirichlet; the boundary node is not an unknown.
    Dirichlet,
    /// Homogeneous Neumann at a grid node, ghost value mirrored.
    Neumann,
}

/// One-dimensional discrete operator with its grid.
#[derive(Clone, Debug)]
pub struct StencilMatrix {
    pub matrix: Matrix<f64>,
    pub grid: Vec<f64>,
    pub left: Boundary,
    pub right: Boundary,
}

impl StencilMatrix {
    pub fn dim(&self) -> usize {
        self.grid.len()
    }
}

/// Discretizes `(2 a b^2 x - b x) d/dx + a b^2 x^2 d^2/dx^2 - (b + g/3)` on
/// `x_l = 2l/n`, `l = 1..n`, with `u(0) = 0` and `u'(2) = 0`. At `x = 2`
/// the ghost value `u_{n+1}` is replaced by `u_{n-1}`.
pub fn ada_stencil(n: usize, beta: f64, alpha: f64, gamma: f64) -> StencilMatrix {
    assert!(n >= 3, "the advection-diffusion stencil needs at least 3 points");
    let h = 2.0 / n as f64;
    let grid: Vec<f64> = (1..=n).map(|l| l as f64 * h).collect();
    let shift = -(beta + gamma / 3.0);
    let mut a = Matrix::zeros(n, n);
    for (i, &x) in grid.iter().enumerate() {
        let adv = (2.0 * alpha * beta * beta * x - beta * x) / (2.0 * h);
        let dif = alpha * beta * beta * x * x / (h * h);
        let (lower, upper) = (dif - adv, dif + adv);
        a[(i, i)] = shift - 2.0 * dif;
        if i > 0 {
            a[(i, i - 1)] += lower;
        }
        if i + 1 < n {
            a[(i, i + 1)] += upper;
        } else {
            a[(i, i - 1)] += upper;
        }
    }
    StencilMatrix { matrix: a, grid, left: Boundary::Dirichlet, right: Boundary::Neumann }
}

/// `(1, -2, 1) / h^2` on the interior points `x_l = l h`, `h = 1/(n+1)`,
/// with homogeneous Dirichlet conditions at both ends.
pub fn laplacian_stencil(n: usize) -> StencilMatrix {
    assert!(n >= 1);
    let h = 1.0 / (n as f64 + 1.0);
    let c = 1.0 / (h * h);
    let matrix = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            -2.0 * c
        } else if i.abs_diff(j) == 1 {
            c
        } else {
            0.0
        }
    });
    let grid = (1..=n).map(|l| l as f64 * h).collect();
    StencilMatrix { matrix, grid, left: Boundary::Dirichlet, right: Boundary::Dirichlet }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{symtridiag_eig, TridiagSym};
    use std::f64::consts::PI;

    fn apply(a: &Matrix<f64>, u: &[f64]) -> Vec<f64> {
        (0..a.rows()).map(|i| (0..a.cols()).map(|j| a[(i, j)] * u[j]).sum()).collect()
    }

    #[test]
    fn pure_absorption() {
        let s = ada_stencil(5, 0.0, 0.5, 0.3);
        let expect = Matrix::identity(5).scale(-0.1);
        assert!(s.matrix.sub(&expect).unwrap().norm_max() < 1e-16);
    }

    #[test]
    fn diffusion_row_pattern() {
        let (n, beta, alpha) = (10, 2.0 / 3.0, 0.5);
        let s = ada_stencil(n, beta, alpha, 0.0);
        let h = 0.2;
        let i = 4;
        let x = s.grid[i];
        let dif = alpha * beta * beta * x * x / (h * h);
        let adv = (2.0 * alpha * beta * beta * x - beta * x) / (2.0 * h);
        assert!((s.matrix[(i, i - 1)] - (dif - adv)).abs() < 1e-12);
        assert!((s.matrix[(i, i)] - (-2.0 * dif - beta)).abs() < 1e-12);
        assert!((s.matrix[(i, i + 1)] - (dif + adv)).abs() < 1e-12);
    }

    #[test]
    fn ada_exact_on_quadratics() {
        let (n, beta, alpha, gamma) = (12, 2.0 / 3.0, 0.5, 0.01);
        let s = ada_stencil(n, beta, alpha, gamma);
        let u: Vec<f64> = s.grid.iter().map(|x| x * x).collect();
        let au = apply(&s.matrix, &u);
        for (i, &x) in s.grid.iter().enumerate().take(n - 1).skip(1) {
            let exact = (2.0 * alpha * beta * beta * x - beta * x) * 2.0 * x + alpha * beta * beta * x * x * 2.0 - (beta + gamma / 3.0) * x * x;
            assert!((au[i] - exact).abs() < 1e-12 * exact.abs().max(1.0), "row {i}");
        }
    }

    #[test]
    fn neumann_row_mirrors_ghost() {
        let s = ada_stencil(6, 0.7, 0.4, 0.0);
        let last = 5;
        let x = 2.0;
        let h = 2.0 / 6.0;
        let dif = 0.4 * 0.49 * x * x / (h * h);
        assert!((s.matrix[(last, last - 1)] - 2.0 * dif).abs() < 1e-12);
    }

    #[test]
    fn laplacian_single_point() {
        assert_eq!(laplacian_stencil(1).matrix.data(), &[-8.0]);
    }

    #[test]
    fn laplacian_eigenvalues() {
        let n = 5;
        let a = laplacian_stencil(n).matrix;
        let t = TridiagSym::new((0..n).map(|i| a[(i, i)]).collect(), (0..n - 1).map(|i| a[(i, i + 1)]).collect()).unwrap();
        let eig = symtridiag_eig(&t).unwrap();
        let h = 1.0 / 6.0;
        let mut exact: Vec<f64> = (1..=n).map(|k| -4.0 / (h * h) * (k as f64 * PI * h / 2.0).sin().powi(2)).collect();
        exact.sort_by(f64::total_cmp);
        for (l, e) in eig.values.iter().zip(&exact) {
            assert!((l - e).abs() < 1e-12 * e.abs());
        }
    }

    #[test]
    fn laplacian_exact_on_parabola() {
        let s = laplacian_stencil(9);
        let u: Vec<f64> = s.grid.iter().map(|x| x * (1.0 - x)).collect();
        for v in apply(&s.matrix, &u) {
            assert!((v + 2.0).abs() < 1e-12);
        }
    }
}
