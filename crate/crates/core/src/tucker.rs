//! Multi-mode operators: the Tucker operator and its variants, and the
//! action of a Kronecker sum.
//!
//! `tucker`, `cttucker`, `tuckerfun` and `itucker` share one traversal. At
//! step `mu` the working buffer holds the data as a column-major
//! `m_mu x rest` matrix with mode `mu` leading and the other modes in cyclic
//! order `mu+1, .., d-1, 0, .., mu-1`. Writing the step result as the
//! `rest x n_mu` matrix `X^T L^T` puts mode `mu+1` in front, so after `d`
//! steps the modes are back in natural order. The matrix variants fold that
//! transpose into the GEMM strides and never relayout the data; the
//! operator variants need one blocked transpose per mode.

use crate::error::{size_err, Error, Result};
use crate::linalg::{gemm_strided, lu_factor, transpose_into, LuFactorization, Matrix, Strided};
use crate::scalar::Scalar;
use crate::tensor::{apply_checked, ColumnOperator, Shape, Tensor};

fn check_stack_len(len: usize, t: &Tensor<impl Scalar>) -> Result<()> {
    if len != t.order() {
        return Err(size_err!("stack of {len} entries for an order-{} tensor", t.order()));
    }
    Ok(())
}

/// One cyclic step: `buf` is `m x rest`; returns `rest x n` where the
/// `m x n` matrix `B` is given by strides (`B = L^T` for a plain product).
fn cyclic_step<T: Scalar>(buf: &[T], m: usize, n: usize, b: Strided<'_, T>) -> Vec<T> {
    let rest = buf.len() / m;
    let mut out = vec![T::zero(); rest * n];
    gemm_strided(rest, m, n, Strided::transposed(buf, m), b, T::zero(), &mut out, 1, rest as isize);
    out
}

/// `T x_0 L_0 x_1 L_1 ... x_{d-1} L_{d-1}` without any data permutation.
pub fn tucker<T: Scalar>(t: &Tensor<T>, ls: &[Matrix<T>]) -> Result<Tensor<T>> {
    check_stack_len(ls.len(), t)?;
    for (mu, (l, &m)) in ls.iter().zip(t.extents()).enumerate() {
        if l.cols() != m {
            return Err(size_err!("tucker mode {mu}: matrix is {}x{}, extent is {m}", l.rows(), l.cols()));
        }
    }
    let mut buf = t.data().to_vec();
    for (l, &m) in ls.iter().zip(t.extents()) {
        buf = cyclic_step(&buf, m, l.rows(), Strided::transposed(l.data(), l.rows()));
    }
    Tensor::from_vec(Shape::new(ls.iter().map(|l| l.rows()).collect())?, buf)
}

/// `tucker(T, [Psi_0^*, ..., Psi_{d-1}^*])` without forming the adjoints
/// as separate operands (a conjugated copy is made for complex data).
pub fn cttucker<T: Scalar>(t: &Tensor<T>, psis: &[Matrix<T>]) -> Result<Tensor<T>> {
    check_stack_len(psis.len(), t)?;
    for (mu, (p, &m)) in psis.iter().zip(t.extents()).enumerate() {
        if p.rows() != m {
            return Err(size_err!("cttucker mode {mu}: matrix is {}x{}, extent is {m}", p.rows(), p.cols()));
        }
    }
    let mut buf = t.data().to_vec();
    for (p, &m) in psis.iter().zip(t.extents()) {
        // (Psi^*)^T = conj(Psi), an m x n column-major matrix.
        buf = if T::IS_REAL {
            cyclic_step(&buf, m, p.cols(), Strided::col_major(p.data(), m))
        } else {
            let conj = p.map(|z| z.conj());
            cyclic_step(&buf, m, p.cols(), Strided::col_major(conj.data(), m))
        };
    }
    Tensor::from_vec(Shape::new(psis.iter().map(|p| p.cols()).collect())?, buf)
}

/// Applies column operators in mode order `0, .., d-1`.
pub fn tuckerfun<T: Scalar>(t: &Tensor<T>, ops: &[&dyn ColumnOperator<T>]) -> Result<Tensor<T>> {
    check_stack_len(ops.len(), t)?;
    let mut buf = t.data().to_vec();
    let mut extents = Vec::with_capacity(t.order());
    for (mu, (op, &m)) in ops.iter().zip(t.extents()).enumerate() {
        let rest = buf.len() / m;
        let x = Matrix::from_col_major(m, rest, buf)?;
        let y = apply_checked(*op, &x).map_err(|e| match e {
            Error::Size(msg) => size_err!("tuckerfun mode {mu}: {msg}"),
            other => other,
        })?;
        let n = y.rows();
        let mut next = vec![T::zero(); n * rest];
        transpose_into(y.data(), n, rest, &mut next);
        buf = next;
        extents.push(n);
    }
    Tensor::from_vec(Shape::new(extents)?, buf)
}

/// LU factorizations of square `P_0, .., P_{d-1}`, computed once and
/// reused by every [`itucker`] call.
#[derive(Clone, Debug)]
pub struct FactorizedStack<T> {
    factors: Vec<LuFactorization<T>>,
}

impl<T: Scalar> FactorizedStack<T> {
    pub fn new(ps: &[Matrix<T>]) -> Result<Self> {
        let factors = ps
            .iter()
            .enumerate()
            .map(|(mu, p)| {
                if !p.is_square() {
                    return Err(size_err!("factor {mu} is {}x{}, not square", p.rows(), p.cols()));
                }
                lu_factor(p)
            })
            .collect::<Result<_>>()?;
        Ok(Self { factors })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[LuFactorization<T>] {
        &self.factors
    }
}

/// `T x_0 P_0^{-1} ... x_{d-1} P_{d-1}^{-1}` by triangular solves.
pub fn itucker<T: Scalar>(t: &Tensor<T>, ps: &FactorizedStack<T>) -> Result<Tensor<T>> {
    check_stack_len(ps.len(), t)?;
    for (mu, (f, &m)) in ps.factors.iter().zip(t.extents()).enumerate() {
        if f.dim() != m {
            return Err(size_err!("itucker mode {mu}: factor has size {}, extent is {m}", f.dim()));
        }
    }
    let mut buf = t.data().to_vec();
    let mut scratch = vec![T::zero(); buf.len()];
    // Transposing first turns each solve into long column sweeps.
    for (f, &m) in ps.factors.iter().zip(t.extents()) {
        let rest = buf.len() / m;
        transpose_into(&buf, m, rest, &mut scratch);
        f.solve_rows_into(&scratch, rest, &mut buf);
    }
    Tensor::from_vec(t.shape().clone(), buf)
}

/// `out (+)= V x_mu A` computed slab by slab in natural layout.
fn accumulate_mode<T: Scalar>(v: &[T], extents: &[usize], a: &Matrix<T>, mu: usize, beta: T, out: &mut [T]) {
    let m = extents[mu];
    let left: usize = extents[..mu].iter().product();
    let slab = left * m;
    if mu == 0 {
        let rest = v.len() / m;
        gemm_strided(m, m, rest, Strided::col_major(a.data(), m), Strided::col_major(v, m), beta, out, 1, m as isize);
        return;
    }
    // Each slab is a left x m matrix S; the result slab is S A^T.
    for (vs, os) in v.chunks_exact(slab).zip(out.chunks_exact_mut(slab)) {
        gemm_strided(left, m, m, Strided::col_major(vs, left), Strided::transposed(a.data(), m), beta, os, 1, left as isize);
    }
}

/// `sum_mu V x_mu A_mu`, the action of the Kronecker sum on `vec(V)`.
pub fn kronsumv<T: Scalar>(v: &Tensor<T>, a: &[Matrix<T>]) -> Result<Tensor<T>> {
    let mut out = vec![T::zero(); v.len()];
    kronsumv_into(v, a, &mut out)?;
    Tensor::from_vec(v.shape().clone(), out)
}

/// [`kronsumv`] writing into a caller-provided buffer.
pub fn kronsumv_into<T: Scalar>(v: &Tensor<T>, a: &[Matrix<T>], out: &mut [T]) -> Result<()> {
    check_stack_len(a.len(), v)?;
    for (mu, (m, &e)) in a.iter().zip(v.extents()).enumerate() {
        if !m.is_square() || m.rows() != e {
            return Err(size_err!("kronsumv mode {mu}: matrix is {}x{}, extent is {e}", m.rows(), m.cols()));
        }
    }
    if out.len() != v.len() {
        return Err(size_err!("output buffer has {} entries, tensor has {}", out.len(), v.len()));
    }
    kronsum_apply(v.data(), v.extents(), a, out);
    Ok(())
}

/// Unchecked [`kronsumv_into`] on raw column-major data.
pub(crate) fn kronsum_apply<T: Scalar>(v: &[T], extents: &[usize], a: &[Matrix<T>], out: &mut [T]) {
    for (mu, m) in a.iter().enumerate() {
        let beta = if mu == 0 { T::zero() } else { T::one() };
        accumulate_mode(v, extents, m, mu, beta, out);
    }
}

/// Reference chain of independent mode products (each middle mode
/// permutes, multiplies and permutes back).
pub fn tucker_sequential<T: Scalar>(t: &Tensor<T>, ls: &[Matrix<T>]) -> Result<Tensor<T>> {
    check_stack_len(ls.len(), t)?;
    ls.iter().enumerate().try_fold(t.clone(), |acc, (mu, l)| acc.mode_product(l, mu))
}
