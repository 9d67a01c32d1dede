//! Order-d dense tensors stored column-major (first index fastest), the
//! unfolding machinery and single-mode products.
//!
//! Modes are 0-based: an order-`d` tensor has modes `0..d`.

use crate::error::{arg_err, size_err, Error, Result};
use crate::linalg::{gemm, gemm_strided, Matrix, Strided};
use crate::scalar::{Scalar, C64};

/// Extents `m_0, ..., m_{d-1}` of a non-empty tensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    extents: Vec<usize>,
}

impl Shape {
    pub fn new(extents: Vec<usize>) -> Result<Self> {
        if extents.is_empty() {
            return Err(size_err!("a tensor needs at least one mode"));
        }
        if let Some(mu) = extents.iter().position(|&m| m == 0) {
            return Err(size_err!("extent of mode {mu} is zero"));
        }
        Ok(Self { extents })
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn order(&self) -> usize {
        self.extents.len()
    }

    pub fn extent(&self, mu: usize) -> usize {
        self.extents[mu]
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same shape with extent `mu` replaced by `n`.
    pub fn with_extent(&self, mu: usize, n: usize) -> Result<Self> {
        self.check_mode(mu)?;
        let mut extents = self.extents.clone();
        extents[mu] = n;
        Shape::new(extents)
    }

    /// Column-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.order());
        let mut acc = 1;
        for &m in &self.extents {
            s.push(acc);
            acc *= m;
        }
        s
    }

    pub fn linear_index(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.order());
        let mut flat = 0;
        for (&i, &m) in index.iter().zip(&self.extents).rev() {
            debug_assert!(i < m);
            flat = flat * m + i;
        }
        flat
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        self.extents
            .iter()
            .map(|&m| {
                let i = flat % m;
                flat /= m;
                i
            })
            .collect()
    }

    /// Product of the extents of all modes other than `mu`.
    pub fn complement_len(&self, mu: usize) -> usize {
        self.len() / self.extents[mu]
    }

    pub(crate) fn check_mode(&self, mu: usize) -> Result<()> {
        if mu >= self.order() {
            return Err(arg_err!("mode {mu} out of range for an order-{} tensor", self.order()));
        }
        Ok(())
    }
}

impl From<Shape> for Vec<usize> {
    fn from(s: Shape) -> Self {
        s.extents
    }
}

fn check_permutation(p: &[usize], d: usize) -> Result<()> {
    if p.len() != d {
        return Err(arg_err!("permutation of length {} for an order-{d} tensor", p.len()));
    }
    let mut seen = vec![false; d];
    for &k in p {
        if k >= d || seen[k] {
            return Err(arg_err!("{p:?} is not a permutation of 0..{d}"));
        }
        seen[k] = true;
    }
    Ok(())
}

/// Dense tensor with column-major linearization.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T> {
    shape: Shape,
    data: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn zeros(shape: Shape) -> Self {
        let data = vec![T::zero(); shape.len()];
        Self { shape, data }
    }

    /// Reshape a flat vector (the inverse of [`Tensor::vec`]).
    pub fn from_vec(shape: Shape, data: Vec<T>) -> Result<Self> {
        if data.len() != shape.len() {
            return Err(size_err!(
                "{} values cannot fill a tensor of shape {:?}",
                data.len(),
                shape.extents()
            ));
        }
        Ok(Self { shape, data })
    }

    /// Tensor with entries `f(multi_index)`, visited in storage order.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut data = Vec::with_capacity(shape.len());
        let mut idx = vec![0; shape.order()];
        for _ in 0..shape.len() {
            data.push(f(&idx));
            for (i, &m) in idx.iter_mut().zip(shape.extents()) {
                *i += 1;
                if *i < m {
                    break;
                }
                *i = 0;
            }
        }
        Self { shape, data }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn extents(&self) -> &[usize] {
        self.shape.extents()
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    /// Column-major flattening.
    pub fn vec(&self) -> Vec<T> {
        self.data.clone()
    }

    pub fn get(&self, index: &[usize]) -> T {
        self.data[self.shape.linear_index(index)]
    }

    /// Same data, new shape with the same element count.
    pub fn reshape(self, shape: Shape) -> Result<Self> {
        Self::from_vec(shape, self.data)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(T) -> U) -> Tensor<U> {
        Tensor { shape: self.shape.clone(), data: self.data.iter().map(|&x| f(x)).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: T, other: &Self) -> Result<Self> {
        if self.shape != other.shape {
            return Err(size_err!("shapes {:?} and {:?} differ", self.extents(), other.extents()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + alpha * b).collect();
        Ok(Self { shape: self.shape.clone(), data })
    }

    pub fn max_abs(&self) -> f64 {
        crate::scalar::max_abs(&self.data)
    }

    /// Generalized transpose: output mode `k` is input mode `p[k]`, so
    /// `out[i_{p[0]}, ..., i_{p[d-1]}] = self[i_0, ..., i_{d-1}]`.
    pub fn permute(&self, p: &[usize]) -> Result<Self> {
        let d = self.order();
        check_permutation(p, d)?;
        let extents: Vec<usize> = p.iter().map(|&k| self.shape.extent(k)).collect();
        let in_strides = self.shape.strides();
        let strides: Vec<usize> = p.iter().map(|&k| in_strides[k]).collect();
        let shape = Shape::new(extents)?;
        let mut data = Vec::with_capacity(self.len());
        if p.iter().enumerate().all(|(k, &pk)| k == pk) {
            data.extend_from_slice(&self.data);
            return Ok(Self { shape, data });
        }
        // Walk the output in storage order; the innermost output mode is a
        // strided run through the input.
        let (m0, s0) = (shape.extent(0), strides[0]);
        let outer = shape.len() / m0;
        let mut idx = vec![0usize; d];
        let mut offset = 0usize;
        for _ in 0..outer {
            data.extend((0..m0).map(|i| self.data[offset + i * s0]));
            for k in 1..d {
                idx[k] += 1;
                offset += strides[k];
                if idx[k] < shape.extent(k) {
                    break;
                }
                offset -= idx[k] * strides[k];
                idx[k] = 0;
            }
        }
        Ok(Self { shape, data })
    }

    /// Inverse of [`Tensor::permute`] with the same `p`.
    pub fn ipermute(&self, p: &[usize]) -> Result<Self> {
        check_permutation(p, self.order())?;
        let mut inv = vec![0; p.len()];
        for (k, &pk) in p.iter().enumerate() {
            inv[pk] = k;
        }
        self.permute(&inv)
    }

    /// `m_mu x prod_{k != mu} m_k` matrix whose columns are the mode-`mu`
    /// fibers, remaining modes in their original order.
    pub fn matricize(&self, mu: usize) -> Result<Matrix<T>> {
        self.shape.check_mode(mu)?;
        let rows = self.shape.extent(mu);
        let cols = self.shape.complement_len(mu);
        let data = if mu == 0 { self.data.clone() } else { self.permute(&front_permutation(mu, self.order()))?.data };
        Matrix::from_col_major(rows, cols, data)
    }

    /// Inverse of [`Tensor::matricize`]. Extent `mu` of the result is the
    /// row count of `m`; the other extents come from `shape`.
    pub fn dematricize(m: &Matrix<T>, mu: usize, shape: &Shape) -> Result<Self> {
        shape.check_mode(mu)?;
        let out = shape.with_extent(mu, m.rows())?;
        if m.cols() != out.complement_len(mu) {
            return Err(size_err!(
                "a {}x{} matrix cannot be folded along mode {mu} into shape {:?}",
                m.rows(),
                m.cols(),
                out.extents()
            ));
        }
        if mu == 0 {
            return Self::from_vec(out, m.data().to_vec());
        }
        let p = front_permutation(mu, shape.order());
        let front = Shape::new(p.iter().map(|&k| out.extent(k)).collect())?;
        Self::from_vec(front, m.data().to_vec())?.ipermute(&p)
    }

    /// `self x_mu L`: multiplies `L` onto every mode-`mu` fiber with a single
    /// GEMM on the matricization.
    pub fn mode_product(&self, l: &Matrix<T>, mu: usize) -> Result<Self> {
        self.shape.check_mode(mu)?;
        let m = self.shape.extent(mu);
        if l.cols() != m {
            return Err(size_err!(
                "mode-{mu} product: matrix is {}x{} but the extent is {m}",
                l.rows(),
                l.cols()
            ));
        }
        let n = l.rows();
        let shape = self.shape.with_extent(mu, n)?;
        let rest = self.shape.complement_len(mu);
        if mu == 0 {
            let mut data = vec![T::zero(); n * rest];
            gemm_strided(n, m, rest, Strided::col_major(l.data(), n), Strided::col_major(&self.data, m), T::zero(), &mut data, 1, n as isize);
            return Self::from_vec(shape, data);
        }
        if mu == self.order() - 1 {
            // Unfolding along the last mode is X^T; compute X L^T directly.
            let mut data = vec![T::zero(); rest * n];
            gemm_strided(rest, m, n, Strided::col_major(&self.data, rest), Strided::transposed(l.data(), n), T::zero(), &mut data, 1, rest as isize);
            return Self::from_vec(shape, data);
        }
        let product = gemm(l, &self.matricize(mu)?)?;
        Self::dematricize(&product, mu, &self.shape)
    }

    /// Applies a column operator to the mode-`mu` matricization.
    pub fn mode_action(&self, op: &dyn ColumnOperator<T>, mu: usize) -> Result<Self> {
        self.shape.check_mode(mu)?;
        let x = self.matricize(mu)?;
        let y = apply_checked(op, &x)?;
        Self::dematricize(&y, mu, &self.shape)
    }
}

impl Tensor<f64> {
    pub fn to_complex(&self) -> Tensor<C64> {
        self.map(|x| C64::new(x, 0.0))
    }
}

/// `[mu, 0, .., mu-1, mu+1, .., d-1]`.
pub(crate) fn front_permutation(mu: usize, d: usize) -> Vec<usize> {
    std::iter::once(mu).chain((0..d).filter(|&k| k != mu)).collect()
}

/// Linear map applied column by column to a matrix, with a fixed output
/// row count for a given input row count.
pub trait ColumnOperator<T: Scalar> {
    /// Rows produced for inputs with `input_rows` rows.
    fn output_rows(&self, input_rows: usize) -> Result<usize>;

    fn apply(&self, x: &Matrix<T>) -> Result<Matrix<T>>;
}

/// Runs `op` and verifies it produced the declared size.
pub(crate) fn apply_checked<T: Scalar>(op: &dyn ColumnOperator<T>, x: &Matrix<T>) -> Result<Matrix<T>> {
    let rows = op.output_rows(x.rows())?;
    let y = op.apply(x)?;
    if y.rows() != rows || y.cols() != x.cols() {
        return Err(Error::Contract(format!(
            "operator declared {rows}x{} output but produced {}x{}",
            x.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(y)
}

impl<T: Scalar> ColumnOperator<T> for Matrix<T> {
    fn output_rows(&self, input_rows: usize) -> Result<usize> {
        if input_rows != self.cols() {
            return Err(size_err!("{}x{} operator applied to {input_rows} rows", self.rows(), self.cols()));
        }
        Ok(self.rows())
    }

    fn apply(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        gemm(self, x)
    }
}

/// The identity map.
#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl<T: Scalar> ColumnOperator<T> for Identity {
    fn output_rows(&self, input_rows: usize) -> Result<usize> {
        Ok(input_rows)
    }

    fn apply(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        Ok(x.clone())
    }
}

/// Column operator from a closure and a declared output row count
/// (`None` keeps the input row count).
pub struct ColumnFn<F> {
    rows: Option<usize>,
    f: F,
}

impl<F> ColumnFn<F> {
    pub fn new(rows: usize, f: F) -> Self {
        Self { rows: Some(rows), f }
    }

    pub fn preserving(f: F) -> Self {
        Self { rows: None, f }
    }
}

impl<T: Scalar, F: Fn(&Matrix<T>) -> Matrix<T>> ColumnOperator<T> for ColumnFn<F> {
    fn output_rows(&self, input_rows: usize) -> Result<usize> {
        Ok(self.rows.unwrap_or(input_rows))
    }

    fn apply(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        Ok((self.f)(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, random_tensor, seeded_rng};
    use crate::scalar::rel_inf_error;
    use proptest::prelude::*;

    fn shape(e: &[usize]) -> Shape {
        Shape::new(e.to_vec()).unwrap()
    }

    fn iota(e: &[usize]) -> Tensor<f64> {
        let s = shape(e);
        let n = s.len();
        Tensor::from_vec(s, (1..=n).map(|x| x as f64).collect()).unwrap()
    }

    /// Brute-force mode product by explicit index loops.
    fn mode_product_loop(t: &Tensor<f64>, l: &Matrix<f64>, mu: usize) -> Tensor<f64> {
        let out = t.shape().with_extent(mu, l.rows()).unwrap();
        Tensor::from_fn(out, |idx| {
            let mut j = idx.to_vec();
            (0..l.cols())
                .map(|k| {
                    j[mu] = k;
                    l[(idx[mu], k)] * t.get(&j)
                })
                .sum()
        })
    }

    #[test]
    fn vec_of_2x2() {
        let t = Tensor::from_vec(shape(&[2, 2]), vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(t.get(&[0, 1]), 3.0);
        assert_eq!(t.get(&[1, 0]), 2.0);
        assert_eq!(t.vec(), vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn vec_matches_index_formula() {
        let t: Tensor<f64> = random_tensor(&mut seeded_rng(3), &[3, 4, 2]);
        let v = t.vec();
        for j3 in 0..2 {
            for j2 in 0..4 {
                for j1 in 0..3 {
                    assert_eq!(v[j1 + j2 * 3 + j3 * 12], t.get(&[j1, j2, j3]));
                }
            }
        }
    }

    #[test]
    fn shape_rejects_empty_and_zero() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![2, 0]).is_err());
        assert!(Tensor::from_vec(shape(&[2, 3]), vec![0.0; 5]).is_err());
        let s = Tensor::from_vec(shape(&[1, 1, 1]), vec![7.0]).unwrap();
        assert_eq!(s.get(&[0, 0, 0]), 7.0);
    }

    #[test]
    fn permute_transposes_matrices() {
        let t = iota(&[2, 3]);
        let p = t.permute(&[1, 0]).unwrap();
        assert_eq!(p.extents(), &[3, 2]);
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(p.get(&[j, i]), t.get(&[i, j]));
            }
        }
        assert_eq!(t.permute(&[0, 1]).unwrap(), t);
        assert!(t.permute(&[0, 0]).is_err());
        assert!(t.permute(&[0]).is_err());
    }

    #[test]
    fn permute_remaps_every_element() {
        let t: Tensor<f64> = random_tensor(&mut seeded_rng(5), &[2, 3, 4]);
        let p = [2, 0, 1];
        let out = t.permute(&p).unwrap();
        assert_eq!(out.extents(), &[4, 2, 3]);
        for f in 0..t.len() {
            let j = t.shape().multi_index(f);
            assert_eq!(out.get(&[j[2], j[0], j[1]]), t.data()[f]);
        }
        assert_eq!(out.ipermute(&p).unwrap(), t);
    }

    #[test]
    fn matricize_small_cases() {
        let m = iota(&[2, 3]);
        assert_eq!(m.matricize(0).unwrap().data(), m.data());
        let t = m.matricize(1).unwrap();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.data(), &[1.0, 3.0, 5.0, 2.0, 4.0, 6.0]);

        let c = iota(&[2, 2, 2]).matricize(2).unwrap();
        let expect = Matrix::from_rows(&[[1.0, 2.0, 3.0, 4.0], [5.0, 6.0, 7.0, 8.0]]).unwrap();
        assert_eq!(c, expect);
        assert!(iota(&[2, 2]).matricize(2).is_err());
    }

    #[test]
    fn dematricize_edge_cases() {
        let m = Matrix::from_col_major(1, 4, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let t = Tensor::dematricize(&m, 1, &shape(&[4, 1])).unwrap();
        assert_eq!(t.extents(), &[4, 1]);
        assert_eq!(t.data(), m.data());
        let bad = Matrix::<f64>::zeros(2, 5);
        assert!(Tensor::dematricize(&bad, 0, &shape(&[2, 3])).is_err());
        // Row count different from the shape's extent changes that extent.
        let wide = Matrix::<f64>::zeros(5, 3);
        assert_eq!(Tensor::dematricize(&wide, 0, &shape(&[2, 3])).unwrap().extents(), &[5, 3]);
    }

    #[test]
    fn mode_product_two_dimensional() {
        let mut rng = seeded_rng(8);
        let t: Tensor<f64> = random_tensor(&mut rng, &[3, 4]);
        let a: Matrix<f64> = random_matrix(&mut rng, 5, 3);
        let b: Matrix<f64> = random_matrix(&mut rng, 2, 4);
        let tm = t.matricize(0).unwrap();
        let first = t.mode_product(&a, 0).unwrap();
        assert!(rel_inf_error(first.data(), a.matmul(&tm).unwrap().data()) < 1e-14);
        let second = t.mode_product(&b, 1).unwrap();
        assert!(rel_inf_error(second.data(), tm.matmul(&b.transpose()).unwrap().data()) < 1e-14);
    }

    #[test]
    fn mode_product_matches_loops() {
        let mut rng = seeded_rng(9);
        let t: Tensor<f64> = random_tensor(&mut rng, &[3, 4, 2]);
        for mu in 0..3 {
            let l: Matrix<f64> = random_matrix(&mut rng, 5, t.extents()[mu]);
            let fast = t.mode_product(&l, mu).unwrap();
            let slow = mode_product_loop(&t, &l, mu);
            assert_eq!(fast.extents(), slow.extents());
            assert!(rel_inf_error(fast.data(), slow.data()) < 1e-13);
        }
        let wrong: Matrix<f64> = random_matrix(&mut rng, 2, 3);
        assert!(matches!(t.mode_product(&wrong, 1), Err(Error::Size(_))));
    }

    #[test]
    fn complex_mode_product() {
        let mut rng = seeded_rng(10);
        let t: Tensor<C64> = random_tensor(&mut rng, &[2, 3, 2]);
        let l: Matrix<C64> = random_matrix(&mut rng, 4, 3);
        let via_action = t.mode_action(&l, 1).unwrap();
        let direct = t.mode_product(&l, 1).unwrap();
        assert!(rel_inf_error(via_action.data(), direct.data()) < 1e-14);
    }

    #[test]
    fn mode_action_identity_and_reversal() {
        let t = iota(&[3, 2]);
        assert_eq!(t.mode_action(&Identity, 1).unwrap(), t);
        let reverse = ColumnFn::preserving(|x: &Matrix<f64>| Matrix::from_fn(x.rows(), x.cols(), |i, j| x[(x.rows() - 1 - i, j)]));
        let r = t.mode_action(&reverse, 0).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(r.get(&[i, j]), t.get(&[2 - i, j]));
            }
        }
    }

    #[test]
    fn mode_action_detects_contract_violation() {
        let liar = ColumnFn::new(4, |x: &Matrix<f64>| Matrix::zeros(3, x.cols()));
        assert!(matches!(iota(&[2, 2]).mode_action(&liar, 0), Err(Error::Contract(_))));
    }

    fn extents_strategy(max_order: usize, max_extent: usize) -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(1..=max_extent, 1..=max_order)
    }

    proptest! {
        #[test]
        fn matricize_roundtrip_is_exact(extents in extents_strategy(6, 5), seed in any::<u64>()) {
            let t: Tensor<f64> = random_tensor(&mut seeded_rng(seed), &extents);
            for mu in 0..t.order() {
                let m = t.matricize(mu).unwrap();
                prop_assert_eq!(Tensor::dematricize(&m, mu, t.shape()).unwrap(), t.clone());
            }
        }

        #[test]
        fn vec_unvec_roundtrip(extents in extents_strategy(5, 4), seed in any::<u64>()) {
            let t: Tensor<f64> = random_tensor(&mut seeded_rng(seed), &extents);
            prop_assert_eq!(Tensor::from_vec(t.shape().clone(), t.vec()).unwrap(), t);
        }

        #[test]
        fn identity_product_is_exact(extents in extents_strategy(5, 4), seed in any::<u64>()) {
            let t: Tensor<f64> = random_tensor(&mut seeded_rng(seed), &extents);
            for mu in 0..t.order() {
                prop_assert_eq!(t.mode_product(&Matrix::identity(t.extents()[mu]), mu).unwrap(), t.clone());
            }
        }

        #[test]
        fn distinct_modes_commute(extents in extents_strategy(5, 4), seed in any::<u64>()) {
            prop_assume!(extents.len() >= 2);
            let mut rng = seeded_rng(seed);
            let t: Tensor<f64> = random_tensor(&mut rng, &extents);
            let (mu, nu) = (0, extents.len() - 1);
            let a: Matrix<f64> = random_matrix(&mut rng, 3, extents[mu]);
            let b: Matrix<f64> = random_matrix(&mut rng, 2, extents[nu]);
            let ab = t.mode_product(&a, mu).unwrap().mode_product(&b, nu).unwrap();
            let ba = t.mode_product(&b, nu).unwrap().mode_product(&a, mu).unwrap();
            prop_assert!(rel_inf_error(ab.data(), ba.data()) < 1e-13);
        }

        #[test]
        fn same_mode_associates(extents in extents_strategy(4, 4), seed in any::<u64>(), pick in any::<usize>()) {
            let mut rng = seeded_rng(seed);
            let t: Tensor<f64> = random_tensor(&mut rng, &extents);
            let mu = pick % extents.len();
            let a: Matrix<f64> = random_matrix(&mut rng, 3, extents[mu]);
            let b: Matrix<f64> = random_matrix(&mut rng, 4, 3);
            let chained = t.mode_product(&a, mu).unwrap().mode_product(&b, mu).unwrap();
            let fused = t.mode_product(&b.matmul(&a).unwrap(), mu).unwrap();
            prop_assert!(rel_inf_error(chained.data(), fused.data()) < 1e-13);
        }

        #[test]
        fn mode_product_equals_loop_sum(extents in extents_strategy(4, 5), seed in any::<u64>(), pick in any::<usize>(), rows in 1usize..5) {
            let total: usize = extents.iter().product();
            prop_assume!(total <= 200);
            let mut rng = seeded_rng(seed);
            let t: Tensor<f64> = random_tensor(&mut rng, &extents);
            let mu = pick % extents.len();
            let l: Matrix<f64> = random_matrix(&mut rng, rows, extents[mu]);
            let fast = t.mode_product(&l, mu).unwrap();
            prop_assert!(rel_inf_error(fast.data(), mode_product_loop(&t, &l, mu).data()) < 1e-13);
        }
    }
}
