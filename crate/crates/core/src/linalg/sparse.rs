//! Compressed sparse rows for assembled Kronecker sums, plus a sparse
//! Cholesky wrapper used by the direct IMEX backend.

use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};

use crate::error::{size_err, Error, Result};
use crate::linalg::{LinearOperator, Matrix};

#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    /// Keeps the structurally nonzero entries of `m`.
    pub fn from_dense(m: &Matrix<f64>) -> Self {
        let mut indptr = vec![0];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m[(i, j)];
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self { rows: m.rows(), cols: m.cols(), indptr, indices, values }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Iterate `(row, col, value)` in row order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            (self.indptr[i]..self.indptr[i + 1]).map(move |p| (i, self.indices[p], self.values[p]))
        })
    }

    pub fn to_dense(&self) -> Matrix<f64> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] += v;
        }
        m
    }

    /// `A (x) B`.
    pub fn kron(a: &Self, b: &Self) -> Self {
        let rows = a.rows * b.rows;
        let cols = a.cols * b.cols;
        let mut indptr = Vec::with_capacity(rows + 1);
        indptr.push(0);
        let mut indices = Vec::with_capacity(a.nnz() * b.nnz());
        let mut values = Vec::with_capacity(a.nnz() * b.nnz());
        for ia in 0..a.rows {
            for ib in 0..b.rows {
                for pa in a.indptr[ia]..a.indptr[ia + 1] {
                    let (ja, va) = (a.indices[pa], a.values[pa]);
                    for pb in b.indptr[ib]..b.indptr[ib + 1] {
                        indices.push(ja * b.cols + b.indices[pb]);
                        values.push(va * b.values[pb]);
                    }
                }
                indptr.push(indices.len());
            }
        }
        Self { rows, cols, indptr, indices, values }
    }

    /// Entrywise sum; column indices within a row are merged.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(size_err!("sparse add of {}x{} and {}x{}", self.rows, self.cols, other.rows, other.cols));
        }
        let mut indptr = vec![0];
        let mut indices = Vec::with_capacity(self.nnz() + other.nnz());
        let mut values = Vec::with_capacity(self.nnz() + other.nnz());
        let mut row: Vec<(usize, f64)> = Vec::new();
        for i in 0..self.rows {
            row.clear();
            for m in [self, other] {
                row.extend((m.indptr[i]..m.indptr[i + 1]).map(|p| (m.indices[p], m.values[p])));
            }
            row.sort_by_key(|e| e.0);
            for &(j, v) in &row {
                if indices.len() > indptr[i] && *indices.last().unwrap() == j {
                    *values.last_mut().unwrap() += v;
                } else {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Ok(Self { rows: self.rows, cols: self.cols, indptr, indices, values })
    }

    /// Assembled `A_d (+) ... (+) A_1` from square factors.
    pub fn kronsum(mats: &[Matrix<f64>]) -> Result<Self> {
        if mats.is_empty() {
            return Err(size_err!("Kronecker sum of an empty stack"));
        }
        if let Some(m) = mats.iter().find(|m| !m.is_square()) {
            return Err(size_err!("Kronecker sum needs square factors, got {}x{}", m.rows(), m.cols()));
        }
        let dims: Vec<usize> = mats.iter().map(|m| m.rows()).collect();
        let total: usize = dims.iter().product();
        let mut sum: Option<Self> = None;
        for (mu, a) in mats.iter().enumerate() {
            let left: usize = dims[..mu].iter().product();
            let right: usize = dims[mu + 1..].iter().product();
            let term = Self::kron(
                &Self::kron(&Self::identity(right), &Self::from_dense(a)),
                &Self::identity(left),
            );
            sum = Some(match sum {
                None => term,
                Some(s) => s.add(&term)?,
            });
        }
        let sum = sum.unwrap();
        debug_assert_eq!(sum.rows, total);
        Ok(sum)
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.cols);
        assert_eq!(y.len(), self.rows);
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for p in self.indptr[i]..self.indptr[i + 1] {
                acc += self.values[p] * x[self.indices[p]];
            }
            *yi = acc;
        }
    }
}

impl LinearOperator for CsrMatrix {
    fn dim(&self) -> usize {
        self.rows
    }
    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.matvec(x, y)
    }
}

/// Sparse `L L^T` factorization of a symmetric positive definite matrix
/// (fill-reducing ordering chosen by the backend).
pub struct SparseCholesky {
    dim: usize,
    llt: faer::sparse::linalg::solvers::Llt<usize, f64>,
}

impl SparseCholesky {
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        if a.rows != a.cols {
            return Err(size_err!("Cholesky needs a square matrix"));
        }
        let triplets: Vec<_> = a.triplets().map(|(i, j, v)| Triplet::new(i, j, v)).collect();
        let csc = SparseColMat::<usize, f64>::try_new_from_triplets(a.rows, a.cols, &triplets)
            .map_err(|e| Error::Numerical(format!("sparse assembly failed: {e:?}")))?;
        let llt = csc
            .sp_cholesky(faer::Side::Lower)
            .map_err(|e| Error::Numerical(format!("sparse Cholesky failed: {e}")))?;
        Ok(Self { dim: a.rows, llt })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.dim);
        let rhs = faer::Mat::<f64>::from_fn(self.dim, 1, |i, _| b[i]);
        let x = self.llt.solve(&rhs);
        x.col_as_slice(0).to_vec()
    }
}
