//! Timing comparisons of Tucker implementations.

use crate::apps::median_time;
use crate::error::{arg_err, Error, Result};
use crate::linalg::Matrix;
use crate::random::{random_matrix, random_tensor, seeded_rng};
use crate::scalar::rel_inf_error;
use crate::tensor::Tensor;
use crate::tucker::{tucker, tucker_sequential};

/// `S_ij = sum_kl L1_ik T_kl L2_jl` by four nested loops.
pub fn double_sum_loops(l1: &Matrix<f64>, t: &Matrix<f64>, l2: &Matrix<f64>) -> Matrix<f64> {
    let (n1, n2) = (l1.rows(), l2.rows());
    let (m1, m2) = (t.rows(), t.cols());
    let mut s = Matrix::zeros(n1, n2);
    for i in 0..n1 {
        for j in 0..n2 {
            let mut acc = 0.0;
            for k in 0..m1 {
                for l in 0..m2 {
                    acc += l1[(i, k)] * t[(k, l)] * l2[(j, l)];
                }
            }
            s[(i, j)] = acc;
        }
    }
    s
}

/// `C = A B` with the textbook inner-product triple loop.
pub fn matmul_loops(a: &Matrix<f64>, b: &Matrix<f64>) -> Matrix<f64> {
    let mut c = Matrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = 0.0;
            for k in 0..a.cols() {
                acc += a[(i, k)] * b[(k, j)];
            }
            c[(i, j)] = acc;
        }
    }
    c
}

/// `L1 T L2^T` by two loop-implemented matrix products.
pub fn double_sum_matloops(l1: &Matrix<f64>, t: &Matrix<f64>, l2: &Matrix<f64>) -> Matrix<f64> {
    matmul_loops(&matmul_loops(l1, t), &l2.transpose())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bench2dRow {
    pub n: usize,
    pub t_loops: f64,
    pub t_matloops: f64,
    pub t_blas: f64,
    /// Largest relative deviation of the loop results from the Tucker result.
    pub disagreement: f64,
}

/// Times the three evaluations of `L1 T L2^T` on standard normal `n x n` data.
pub fn bench2d(n: usize, reps: usize, seed: u64) -> Result<Bench2dRow> {
    if n < 2 {
        return Err(arg_err!("bench2d needs n >= 2, got {n}"));
    }
    let mut rng = seeded_rng(seed);
    let l1: Matrix<f64> = random_matrix(&mut rng, n, n);
    let l2: Matrix<f64> = random_matrix(&mut rng, n, n);
    let t: Tensor<f64> = random_tensor(&mut rng, &[n, n]);
    let tm = t.matricize(0)?;
    let ls = [l1.clone(), l2.clone()];
    let (s_loops, t_loops) = median_time(reps, || double_sum_loops(&l1, &tm, &l2));
    let (s_mat, t_matloops) = median_time(reps, || double_sum_matloops(&l1, &tm, &l2));
    let (s_blas, t_blas) = median_time(reps, || tucker(&t, &ls));
    let s_blas = s_blas?;
    let disagreement = rel_inf_error(s_loops.data(), s_blas.data()).max(rel_inf_error(s_mat.data(), s_blas.data()));
    Ok(Bench2dRow { n, t_loops, t_matloops, t_blas, disagreement })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchTuckerRow {
    pub n: usize,
    pub t_tucker: f64,
    pub t_sequential: f64,
    pub disagreement: f64,
}

/// Bytes held at peak by [`bench_tucker`]: input, two results and the
/// working buffers of the sequential chain.
pub fn bench_tucker_bytes(d: usize, n: usize) -> u64 {
    (n as u64).saturating_pow(d as u32).saturating_mul(8 * 6)
}

/// Times [`tucker`] against [`tucker_sequential`] on a random order-`d`
/// tensor with `n x n` factors. Refuses before allocating when the
/// footprint exceeds `mem_cap` bytes.
pub fn bench_tucker(d: usize, n: usize, reps: usize, seed: u64, mem_cap: u64) -> Result<BenchTuckerRow> {
    if !(1..=8).contains(&d) || n == 0 {
        return Err(arg_err!("bench-tucker needs 1 <= d <= 8 and n >= 1, got d={d}, n={n}"));
    }
    let requested = bench_tucker_bytes(d, n);
    if requested > mem_cap {
        return Err(Error::MemoryCap { requested, cap: mem_cap });
    }
    let mut rng = seeded_rng(seed);
    let t: Tensor<f64> = random_tensor(&mut rng, &vec![n; d]);
    let ls: Vec<Matrix<f64>> = (0..d).map(|_| random_matrix(&mut rng, n, n)).collect();
    let (a, t_tucker) = median_time(reps, || tucker(&t, &ls));
    let (b, t_sequential) = median_time(reps, || tucker_sequential(&t, &ls));
    let disagreement = rel_inf_error(a?.data(), b?.data());
    Ok(BenchTuckerRow { n, t_tucker, t_sequential, disagreement })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_paths_agree() {
        let row = bench2d(9, 1, 3).unwrap();
        assert!(row.disagreement < 1e-12, "{}", row.disagreement);
        assert!(bench2d(1, 1, 3).is_err());
    }

    #[test]
    fn loop_matmul_matches_gemm() {
        let mut rng = seeded_rng(4);
        let a: Matrix<f64> = random_matrix(&mut rng, 5, 3);
        let b: Matrix<f64> = random_matrix(&mut rng, 3, 4);
        assert!(rel_inf_error(matmul_loops(&a, &b).data(), a.matmul(&b).unwrap().data()) < 1e-14);
    }

    #[test]
    fn tucker_bench_agrees_and_guards_memory() {
        let row = bench_tucker(4, 5, 1, 5, u64::MAX).unwrap();
        assert!(row.disagreement < 1e-12);
        match bench_tucker(6, 100, 1, 5, 1 << 30) {
            Err(Error::MemoryCap { requested, .. }) => assert!(requested > 1 << 30),
            other => panic!("{other:?}"),
        }
    }
}
