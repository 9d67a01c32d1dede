//! Dense linear-algebra primitives: GEMM, LU, symmetric tridiagonal
//! eigenvalues, the matrix exponential, dense DFT matrices, (P)CG and a
//! small CSR type for assembled Kronecker sums.

mod cg;
mod dft;
mod expm;
mod lu;
mod matrix;
mod sparse;
mod tridiag;

pub use cg::{pcg, CgReport, FnOperator, LinearOperator};
pub use dft::{dft_matrices, fourier_nodes, fourier_synthesis_at, resample_at, resample_matrix, DftPair};
pub use expm::expm;
pub use lu::{lu_factor, LuFactorization};
pub use matrix::Matrix;
pub use sparse::{CsrMatrix, SparseCholesky};
pub use tridiag::{symtridiag_eig, symtridiag_eig_vectors, TridiagEigen, TridiagSym};

use crate::error::{size_err, Result};
use crate::scalar::Scalar;

/// `A * B`. Delegates to the `matrixmultiply` microkernels.
pub fn gemm<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.cols() != b.rows() {
        return Err(size_err!(
            "gemm inner dimensions differ: {}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        ));
    }
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    let mut c = Matrix::zeros(m, n);
    gemm_strided(
        m,
        k,
        n,
        Strided::col_major(a.data(), m),
        Strided::col_major(b.data(), k),
        T::zero(),
        c.data_mut(),
        1,
        m as isize,
    );
    Ok(c)
}

/// Read-only strided view used to feed the GEMM kernel.
#[derive(Clone, Copy)]
pub(crate) struct Strided<'a, T> {
    pub data: &'a [T],
    pub rs: isize,
    pub cs: isize,
}

impl<'a, T> Strided<'a, T> {
    pub fn col_major(data: &'a [T], rows: usize) -> Self {
        Self { data, rs: 1, cs: rows as isize }
    }

    /// Transposed view of a column-major `rows x _` matrix.
    pub fn transposed(data: &'a [T], rows: usize) -> Self {
        Self { data, rs: rows as isize, cs: 1 }
    }
}

/// `C (m x n) <- A (m x k) * B (k x n) + beta C` on strided storage.
#[allow(clippy::too_many_arguments)]
pub(crate) fn gemm_strided<T: Scalar>(
    m: usize,
    k: usize,
    n: usize,
    a: Strided<'_, T>,
    b: Strided<'_, T>,
    beta: T,
    c: &mut [T],
    rsc: isize,
    csc: isize,
) {
    let span = |rows: usize, cols: usize, rs: isize, cs: isize| {
        if rows == 0 || cols == 0 {
            0
        } else {
            (rows as isize - 1) * rs + (cols as isize - 1) * cs + 1
        }
    };
    assert!(span(m, k, a.rs, a.cs) as usize <= a.data.len(), "gemm: A view out of bounds");
    assert!(span(k, n, b.rs, b.cs) as usize <= b.data.len(), "gemm: B view out of bounds");
    assert!(span(m, n, rsc, csc) as usize <= c.len(), "gemm: C view out of bounds");
    if m == 0 || n == 0 {
        return;
    }
    // SAFETY: the three views were bounds-checked above; `c` is uniquely borrowed.
    unsafe {
        T::gemm_raw(
            m,
            k,
            n,
            a.data.as_ptr(),
            a.rs,
            a.cs,
            b.data.as_ptr(),
            b.rs,
            b.cs,
            beta,
            c.as_mut_ptr(),
            rsc,
            csc,
        );
    }
}

const TRANSPOSE_BLOCK: usize = 32;

/// Blocked out-of-place transpose of a column-major `rows x cols` matrix.
pub(crate) fn transpose_into<T: Copy>(src: &[T], rows: usize, cols: usize, dst: &mut [T]) {
    debug_assert_eq!(src.len(), rows * cols);
    debug_assert_eq!(dst.len(), rows * cols);
    if rows == 1 || cols == 1 {
        dst.copy_from_slice(src);
        return;
    }
    for jb in (0..cols).step_by(TRANSPOSE_BLOCK) {
        let jend = (jb + TRANSPOSE_BLOCK).min(cols);
        for ib in (0..rows).step_by(TRANSPOSE_BLOCK) {
            let iend = (ib + TRANSPOSE_BLOCK).min(rows);
            for j in jb..jend {
                for i in ib..iend {
                    dst[j + i * cols] = src[i + j * rows];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, seeded_rng};
    use num_complex::Complex64;

    fn naive<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).map(|k| a[(i, k)] * b[(k, j)]).sum()
        })
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = seeded_rng(1);
        let a: Matrix<f64> = random_matrix(&mut rng, 4, 3);
        assert_eq!(gemm(&a, &Matrix::identity(3)).unwrap(), a);
    }

    #[test]
    fn small_product() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let b = Matrix::from_rows(&[[1.0], [1.0]]).unwrap();
        assert_eq!(gemm(&a, &b).unwrap().data(), &[3.0, 7.0]);
    }

    #[test]
    fn matches_triple_loop() {
        let mut rng = seeded_rng(7);
        let a: Matrix<f64> = random_matrix(&mut rng, 7, 5);
        let b: Matrix<f64> = random_matrix(&mut rng, 5, 9);
        let err = crate::scalar::rel_inf_error(gemm(&a, &b).unwrap().data(), naive(&a, &b).data());
        assert!(err < 1e-13, "{err}");
        let ac: Matrix<Complex64> = random_matrix(&mut rng, 6, 4);
        let bc: Matrix<Complex64> = random_matrix(&mut rng, 4, 3);
        let err = crate::scalar::rel_inf_error(gemm(&ac, &bc).unwrap().data(), naive(&ac, &bc).data());
        assert!(err < 1e-13, "{err}");
    }

    #[test]
    fn random_sizes_up_to_30() {
        let mut rng = seeded_rng(11);
        for (m, k, n) in [(1, 1, 1), (30, 1, 30), (13, 29, 2), (30, 30, 30), (17, 23, 19)] {
            let a: Matrix<f64> = random_matrix(&mut rng, m, k);
            let b: Matrix<f64> = random_matrix(&mut rng, k, n);
            let err = crate::scalar::rel_inf_error(gemm(&a, &b).unwrap().data(), naive(&a, &b).data());
            assert!(err < 1e-13, "{m}x{k}x{n}: {err}");
        }
    }

    #[test]
    fn inner_dimension_mismatch() {
        let a = Matrix::<f64>::zeros(2, 3);
        assert!(gemm(&a, &a).is_err());
    }

    #[test]
    fn blocked_transpose() {
        let src: Vec<usize> = (0..70 * 45).collect();
        let mut dst = vec![0; src.len()];
        transpose_into(&src, 70, 45, &mut dst);
        for i in 0..70 {
            for j in 0..45 {
                assert_eq!(dst[j + i * 45], src[i + j * 70]);
            }
        }
    }
}
