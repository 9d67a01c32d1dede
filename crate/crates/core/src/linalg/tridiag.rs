use crate::error::{arg_err, Error, Result};
use crate::linalg::Matrix;

/// Real symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagSym {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl TridiagSym {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(arg_err!("tridiagonal matrix needs at least one row"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(arg_err!(
                "{} off-diagonal entries for {} diagonal entries",
                offdiag.len(),
                diag.len()
            ));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Matrix<f64> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.offdiag[i]
            } else if j + 1 == i {
                self.offdiag[j]
            } else {
                0.0
            }
        })
    }
}

/// Ascending eigenvalues with the matching rows of eigenvector components.
#[derive(Clone, Debug)]
pub struct TridiagEigen {
    pub values: Vec<f64>,
    /// First component of each normalized eigenvector.
    pub first_components: Vec<f64>,
    /// Full eigenvectors as columns, when requested.
    pub vectors: Option<Matrix<f64>>,
}

const MAX_SWEEPS_PER_VALUE: usize = 50;

/// Eigenvalues and first eigenvector components (the Golub-Welsch inputs).
pub fn symtridiag_eig(t: &TridiagSym) -> Result<TridiagEigen> {
    ql_implicit(t, false)
}

/// Eigenvalues and the complete orthonormal eigenvector matrix.
pub fn symtridiag_eig_vectors(t: &TridiagSym) -> Result<TridiagEigen> {
    ql_implicit(t, true)
}

// Implicit QL with Wilkinson-type shifts. Only the rows of the eigenvector
// matrix that are asked for get rotated.
fn ql_implicit(t: &TridiagSym, full: bool) -> Result<TridiagEigen> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    let nz = if full { n } else { 1 };
    // z[row][col], eigenvectors are columns
    let mut z = vec![vec![0.0; n]; nz];
    for (r, row) in z.iter_mut().enumerate() {
        row[r] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS_PER_VALUE {
                return Err(Error::Numerical(format!(
                    "tridiagonal QL did not converge for eigenvalue {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    let first_components = order.iter().map(|&k| z[0][k]).collect();
    let vectors = full.then(|| Matrix::from_fn(n, n, |i, j| z[i][order[j]]));
    Ok(TridiagEigen { values, first_components, vectors })
}
