//! Chebyshev points of the first kind and barycentric Lagrange matrices.

use std::f64::consts::PI;

use crate::error::{arg_err, Result};
use crate::linalg::Matrix;

/// Nodes `cos((2k-1) pi / (2m))` and barycentric weights
/// `(-1)^{k+1} sin((2k-1) pi / (2m))`, `k = 1..m`.
pub fn chebyshev_points_weights(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mf = m as f64;
    // sin form of the cosine: exactly symmetric, exact zero for odd m.
    let nodes = (1..=m).map(|k| (PI * (mf - 2.0 * k as f64 + 1.0) / (2.0 * mf)).sin()).collect();
    let weights = (1..=m)
        .map(|k| {
            let s = (PI * (2.0 * k as f64 - 1.0) / (2.0 * mf)).sin();
            if k % 2 == 1 {
                s
            } else {
                -s
            }
        })
        .collect();
    (nodes, weights)
}

/// `len(x) x m` matrix with the Lagrange basis `L_i(x_l)` at `(l, i)`,
/// evaluated in the second barycentric form. Points equal to a node give
/// the matching unit row.
pub fn barycentric_matrix(nodes: &[f64], weights: &[f64], x: &[f64]) -> Result<Matrix<f64>> {
    let m = nodes.len();
    if weights.len() != m {
        return Err(arg_err!("{m} nodes but {} weights", weights.len()));
    }
    let mut sorted = nodes.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(arg_err!("interpolation nodes must be distinct"));
    }
    let n = x.len();
    let mut out = Matrix::zeros(n, m);
    let mut row = vec![0.0; m];
    for (l, &xl) in x.iter().enumerate() {
        if let Some(j) = nodes.iter().position(|&xi| xi == xl) {
            out[(l, j)] = 1.0;
            continue;
        }
        let mut denom = 0.0;
        for ((r, &xi), &w) in row.iter_mut().zip(nodes).zip(weights) {
            *r = w / (xl - xi);
            denom += *r;
        }
        for (i, r) in row.iter().enumerate() {
            out[(l, i)] = r / denom;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let (x, w) = chebyshev_points_weights(1);
        assert_eq!((x[0], w[0]), (0.0, 1.0));
        let (x, w) = chebyshev_points_weights(2);
        let s = 0.5f64.sqrt();
        assert!((x[0] - s).abs() < 1e-15 && (x[1] + s).abs() < 1e-15);
        assert!((w[0] - s).abs() < 1e-15 && (w[1] + s).abs() < 1e-15);
    }

    #[test]
    fn nodes_match_cosine_formula() {
        let m = 35;
        let (x, _) = chebyshev_points_weights(m);
        for (k, xk) in x.iter().enumerate() {
            let c = (PI * (2.0 * k as f64 + 1.0) / (2.0 * m as f64)).cos();
            assert!((xk - c).abs() < 1e-15);
        }
    }

    #[test]
    fn weights_proportional_to_product_formula() {
        let m = 5;
        let (x, w) = chebyshev_points_weights(m);
        let direct: Vec<f64> = (0..m)
            .map(|i| 1.0 / (0..m).filter(|&k| k != i).map(|k| x[i] - x[k]).product::<f64>())
            .collect();
        let ratio = w[0] / direct[0];
        for i in 0..m {
            assert!((w[i] - ratio * direct[i]).abs() < 1e-12 * w[i].abs().max(1.0), "i={i}");
        }
    }

    #[test]
    fn node_rows_are_unit_vectors() {
        let (x, w) = chebyshev_points_weights(6);
        let l = barycentric_matrix(&x, &w, &x).unwrap();
        assert_eq!(l, Matrix::identity(6));
    }

    #[test]
    fn partition_of_unity_and_quadratic_exactness() {
        let (x, w) = chebyshev_points_weights(3);
        let pts: Vec<f64> = (0..10).map(|l| -0.95 + 0.21 * l as f64).collect();
        let l = barycentric_matrix(&x, &w, &pts).unwrap();
        let f = |t: f64| 3.0 * t * t - t + 0.5;
        for (r, &p) in pts.iter().enumerate() {
            let sum: f64 = (0..3).map(|i| l[(r, i)]).sum();
            assert!((sum - 1.0).abs() < 1e-13);
            let val: f64 = (0..3).map(|i| l[(r, i)] * f(x[i])).sum();
            assert!((val - f(p)).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_duplicate_nodes() {
        assert!(barycentric_matrix(&[0.0, 1.0, 0.0], &[1.0, 1.0, 1.0], &[0.5]).is_err());
    }
}
