use crate::error::{size_err, Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// LU factorization with partial pivoting, `P A = L U`.
///
/// `L` (unit lower) and `U` share one column-major buffer.
#[derive(Clone, Debug)]
pub struct LuFactorization<T> {
    lu: Matrix<T>,
    /// Row `i` of `P A` is row `perm[i]` of `A`.
    perm: Vec<usize>,
}

pub fn lu_factor<T: Scalar>(a: &Matrix<T>) -> Result<LuFactorization<T>> {
    if !a.is_square() {
        return Err(size_err!("LU needs a square matrix, got {}x{}", a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu[(i, k)].modulus()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax == 0.0 || !pmax.is_finite() {
            return Err(Error::Singular { column: k });
        }
        if p != k {
            for j in 0..n {
                let d = lu.data_mut();
                d.swap(k + j * n, p + j * n);
            }
            perm.swap(k, p);
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            lu[(i, k)] /= pivot;
        }
        for j in k + 1..n {
            let ukj = lu[(k, j)];
            if ukj == T::zero() {
                continue;
            }
            let d = lu.data_mut();
            let (left, right) = d.split_at_mut(j * n);
            let lcol = &left[k * n..k * n + n];
            let col = &mut right[..n];
            for i in k + 1..n {
                col[i] -= lcol[i] * ukj;
            }
        }
    }
    Ok(LuFactorization { lu, perm })
}

impl<T: Scalar> LuFactorization<T> {
    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    /// Solve `A X = B`.
    pub fn solve(&self, b: &Matrix<T>) -> Result<Matrix<T>> {
        if b.rows() != self.dim() {
            return Err(size_err!(
                "right-hand side has {} rows, system has {}",
                b.rows(),
                self.dim()
            ));
        }
        let mut x = b.clone();
        self.solve_columns(x.data_mut());
        Ok(x)
    }

    /// In-place solve for every contiguous length-`n` column of `data`.
    pub fn solve_columns(&self, data: &mut [T]) {
        let n = self.dim();
        assert_eq!(data.len() % n.max(1), 0, "buffer is not a whole number of columns");
        let lu = self.lu.data();
        let mut tmp = vec![T::zero(); n];
        for col in data.chunks_exact_mut(n) {
            for (t, &p) in tmp.iter_mut().zip(&self.perm) {
                *t = col[p];
            }
            // forward substitution, unit lower
            for k in 0..n {
                let xk = tmp[k];
                if xk != T::zero() {
                    let lcol = &lu[k * n..(k + 1) * n];
                    for i in k + 1..n {
                        tmp[i] -= lcol[i] * xk;
                    }
                }
            }
            // back substitution
            for k in (0..n).rev() {
                let ucol = &lu[k * n..(k + 1) * n];
                tmp[k] /= ucol[k];
                let xk = tmp[k];
                if xk != T::zero() {
                    for i in 0..k {
                        tmp[i] -= ucol[i] * xk;
                    }
                }
            }
            col.copy_from_slice(&tmp);
        }
    }

    /// `dst = src A^{-T}` for a column-major `rows x n` matrix `src`, i.e.
    /// every row of `src` solved against `A`. All updates run along
    /// contiguous columns of length `rows`.
    pub(crate) fn solve_rows_into(&self, src: &[T], rows: usize, dst: &mut [T]) {
        let n = self.dim();
        assert!(src.len() == rows * n && dst.len() == rows * n, "buffer is not rows x n");
        let lu = self.lu.data();
        for (t, &p) in self.perm.iter().enumerate() {
            dst[t * rows..(t + 1) * rows].copy_from_slice(&src[p * rows..(p + 1) * rows]);
        }
        for k in 0..n {
            let (head, tail) = dst.split_at_mut((k + 1) * rows);
            let xk = &head[k * rows..];
            for (i, col) in tail.chunks_exact_mut(rows).enumerate() {
                let l = lu[k * n + k + 1 + i];
                if l != T::zero() {
                    col.iter_mut().zip(xk).for_each(|(c, &x)| *c -= l * x);
                }
            }
        }
        for k in (0..n).rev() {
            let (head, tail) = dst.split_at_mut(k * rows);
            let xk = &mut tail[..rows];
            let inv = T::one() / lu[k * n + k];
            xk.iter_mut().for_each(|v| *v *= inv);
            for (i, col) in head.chunks_exact_mut(rows).enumerate() {
                let u = lu[k * n + i];
                if u != T::zero() {
                    col.iter_mut().zip(xk.iter()).for_each(|(c, &x)| *c -= u * x);
                }
            }
        }
    }

    /// `P^T L U`, the factored matrix rebuilt from its factors.
    pub fn reconstruct(&self) -> Matrix<T> {
        let n = self.dim();
        let l = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lu[(i, j)],
            std::cmp::Ordering::Equal => T::one(),
            std::cmp::Ordering::Less => T::zero(),
        });
        let u = Matrix::from_fn(n, n, |i, j| if i <= j { self.lu[(i, j)] } else { T::zero() });
        let pa = l.matmul(&u).expect("square factors");
        let mut a = Matrix::zeros(n, n);
        for (i, &p) in self.perm.iter().enumerate() {
            for j in 0..n {
                a[(p, j)] = pa[(i, j)];
            }
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, seeded_rng};
    use crate::scalar::rel_inf_error;

    #[test]
    fn identity_solve_returns_rhs() {
        let f = lu_factor(&Matrix::<f64>::identity(4)).unwrap();
        let b = Matrix::from_fn(4, 2, |i, j| (i + 3 * j) as f64);
        assert_eq!(f.solve(&b).unwrap(), b);
    }

    #[test]
    fn diagonal_solve_divides() {
        let f = lu_factor(&Matrix::from_diag(&[2.0, 4.0, -0.5])).unwrap();
        let b = Matrix::from_col_major(3, 1, vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(f.solve(&b).unwrap().data(), &[0.5, 0.25, -2.0]);
    }

    #[test]
    fn reconstructs_random_matrix() {
        let mut rng = seeded_rng(3);
        let a: Matrix<f64> = random_matrix(&mut rng, 6, 6);
        let f = lu_factor(&a).unwrap();
        assert!(rel_inf_error(f.reconstruct().data(), a.data()) < 1e-13);
    }

    #[test]
    fn residual_small_complex() {
        let mut rng = seeded_rng(5);
        let a: Matrix<num_complex::Complex64> = random_matrix(&mut rng, 8, 8);
        let b = random_matrix(&mut rng, 8, 3);
        let x = lu_factor(&a).unwrap().solve(&b).unwrap();
        let r = a.matmul(&x).unwrap().sub(&b).unwrap();
        assert!(r.norm_max() <= 1e-12 * b.norm_max() * a.norm_one());
    }

    #[test]
    fn row_solve_matches_column_solve() {
        let mut rng = seeded_rng(6);
        let a: Matrix<num_complex::Complex64> = random_matrix(&mut rng, 7, 7);
        let b: Matrix<num_complex::Complex64> = random_matrix(&mut rng, 7, 5);
        let f = lu_factor(&a).unwrap();
        let x = f.solve(&b).unwrap();
        let mut y = vec![num_complex::Complex64::default(); 35];
        f.solve_rows_into(b.transpose().data(), 5, &mut y);
        assert!(rel_inf_error(&y, x.transpose().data()) < 1e-13);
    }

    #[test]
    fn singular_rejected() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(lu_factor(&a).unwrap_err(), Error::Singular { column: 1 });
    }

    #[test]
    fn non_square_rejected() {
        assert!(lu_factor(&Matrix::<f64>::zeros(2, 3)).is_err());
    }
}
