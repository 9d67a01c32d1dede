//! Explicit Kronecker products and sums.
//!
//! These deliberately materialize the big matrices and exist only to check
//! the structured kernels at small sizes.

use crate::error::{arg_err, size_err, Error, Result};
use crate::linalg::{lu_factor, Matrix};
use crate::random::{perturbed_identity, random_matrix, seeded_rng, SampleNormal, SeededRng};
use crate::scalar::{Scalar, C64};
use crate::tensor::{Shape, Tensor};

/// Largest Kronecker matrix (in entries) the oracles will assemble.
pub const KRON_ENTRY_CAP: usize = 1 << 24;

fn check_cap<T>(rows: usize, cols: usize) -> Result<()> {
    let entries = rows.saturating_mul(cols);
    if entries > KRON_ENTRY_CAP {
        let size = std::mem::size_of::<T>() as u64;
        return Err(Error::MemoryCap { requested: entries as u64 * size, cap: KRON_ENTRY_CAP as u64 * size });
    }
    Ok(())
}

/// `A (x) B`: block `(i, j)` is `a_ij B`.
pub fn kron<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (p, q) = (b.rows(), b.cols());
    Matrix::from_fn(a.rows() * p, a.cols() * q, |i, j| a[(i / p, j / q)] * b[(i % p, j % q)])
}

/// `L_d (x) ... (x) L_1` for the stack `[L_1, ..., L_d]`.
pub fn kron_chain<T: Scalar>(ls: &[Matrix<T>]) -> Result<Matrix<T>> {
    let (first, rest) = ls.split_first().ok_or_else(|| size_err!("empty matrix stack"))?;
    let rows: usize = ls.iter().map(|l| l.rows()).product();
    let cols: usize = ls.iter().map(|l| l.cols()).product();
    check_cap::<T>(rows, cols)?;
    Ok(rest.iter().fold(first.clone(), |acc, l| kron(l, &acc)))
}

/// `A_d (+) ... (+) A_1 = sum_mu I (x) .. (x) A_mu (x) .. (x) I`.
pub fn kronsum<T: Scalar>(a: &[Matrix<T>]) -> Result<Matrix<T>> {
    if a.is_empty() {
        return Err(size_err!("empty matrix stack"));
    }
    if let Some(mu) = a.iter().position(|m| !m.is_square()) {
        return Err(arg_err!("Kronecker sum factor {mu} is {}x{}, not square", a[mu].rows(), a[mu].cols()));
    }
    let n: usize = a.iter().map(|m| m.rows()).product();
    check_cap::<T>(n, n)?;
    let mut sum = Matrix::zeros(n, n);
    for mu in 0..a.len() {
        let stack: Vec<Matrix<T>> = a
            .iter()
            .enumerate()
            .map(|(k, m)| if k == mu { m.clone() } else { Matrix::identity(m.rows()) })
            .collect();
        sum = sum.add(&kron_chain(&stack)?)?;
    }
    Ok(sum)
}

/// `unvec((L_d (x) ... (x) L_1) vec(T))` with the Kronecker matrix assembled.
pub fn kron_apply_oracle<T: Scalar>(ls: &[Matrix<T>], t: &Tensor<T>) -> Result<Tensor<T>> {
    if ls.len() != t.order() {
        return Err(size_err!("{} matrices for an order-{} tensor", ls.len(), t.order()));
    }
    for (mu, (l, &m)) in ls.iter().zip(t.extents()).enumerate() {
        if l.cols() != m {
            return Err(size_err!("mode {mu}: matrix has {} columns, extent is {m}", l.cols()));
        }
    }
    let k = kron_chain(ls)?;
    let v = Matrix::from_col_major(t.len(), 1, t.vec())?;
    let out = Shape::new(ls.iter().map(|l| l.rows()).collect())?;
    Tensor::from_vec(out, k.matmul(&v)?.into_data())
}

/// Outcome of one identity over all sampled cases.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub property: usize,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub worst_error: f64,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub seed: u64,
    pub tolerance: f64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn worst_error(&self) -> f64 {
        self.checks.iter().map(|c| c.worst_error).fold(0.0, f64::max)
    }
}

pub const IDENTITY_TOL: f64 = 1e-12;

const NAMES: [&str; 8] = [
    "A(x)(B1+B2) = A(x)B1 + A(x)B2",
    "(B1+B2)(x)A = B1(x)A + B2(x)A",
    "(lA)(x)B = A(x)(lB) = l(A(x)B)",
    "(A(x)B)(x)C = A(x)(B(x)C)",
    "(A(x)B)^T = A^T(x)B^T",
    "(A(x)B)^-1 = A^-1(x)B^-1",
    "(A(x)B)(D(x)E) = (AD)(x)(BE)",
    "vec(ADC) = (C^T(x)A)vec(D)",
];

fn rel_diff<T: Scalar>(x: &Matrix<T>, y: &Matrix<T>) -> f64 {
    let scale = y.norm_max().max(f64::MIN_POSITIVE);
    x.sub(y).map(|d| d.norm_max() / scale).unwrap_or(f64::INFINITY)
}

fn dims(rng: &mut SeededRng) -> usize {
    use rand::Rng;
    rng.random_range(1..=4)
}

fn inverse<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    lu_factor(a)?.solve(&Matrix::identity(a.rows()))
}

/// Largest relative violation of each identity on one random instance.
/// `skew` corrupts the Kronecker product under test (zero for a real run).
fn identity_errors<T: SampleNormal>(rng: &mut SeededRng, skew: f64) -> Result<[f64; 8]> {
    let kr = |a: &Matrix<T>, b: &Matrix<T>| {
        let mut k = kron(a, b);
        k[(0, 0)] *= T::from_f64(1.0 + skew);
        k
    };
    let (m, n, p, q, r, s) = (dims(rng), dims(rng), dims(rng), dims(rng), dims(rng), dims(rng));
    let a: Matrix<T> = random_matrix(rng, m, n);
    let b1: Matrix<T> = random_matrix(rng, p, q);
    let b2: Matrix<T> = random_matrix(rng, p, q);
    let c: Matrix<T> = random_matrix(rng, r, s);
    let lambda = T::sample_normal(rng);
    let mut e = [0.0; 8];

    let bsum = b1.add(&b2)?;
    e[0] = rel_diff(&kr(&a, &bsum), &kr(&a, &b1).add(&kr(&a, &b2))?);
    e[1] = rel_diff(&kr(&bsum, &a), &kr(&b1, &a).add(&kr(&b2, &a))?);
    let reference = kr(&a, &b1).scale(lambda);
    e[2] = rel_diff(&kr(&a.scale(lambda), &b1), &reference).max(rel_diff(&kr(&a, &b1.scale(lambda)), &reference));
    e[3] = rel_diff(&kr(&kr(&a, &b1), &c), &kr(&a, &kr(&b1, &c)));
    e[4] = rel_diff(&kr(&a, &b1).transpose(), &kr(&a.transpose(), &b1.transpose()));

    let sa: Matrix<T> = perturbed_identity(rng, m, 0.2);
    let sb: Matrix<T> = perturbed_identity(rng, p, 0.2);
    e[5] = rel_diff(&inverse(&kr(&sa, &sb))?, &kr(&inverse(&sa)?, &inverse(&sb)?));

    let d: Matrix<T> = random_matrix(rng, n, r);
    let ee: Matrix<T> = random_matrix(rng, q, s);
    e[6] = rel_diff(&kr(&a, &b1).matmul(&kr(&d, &ee))?, &kr(&a.matmul(&d)?, &b1.matmul(&ee)?));

    let dd: Matrix<T> = random_matrix(rng, n, r);
    let cc: Matrix<T> = random_matrix(rng, r, s);
    let lhs = a.matmul(&dd)?.matmul(&cc)?;
    let lhs = Matrix::from_col_major(m * s, 1, lhs.into_data())?;
    let vec_d = Matrix::from_col_major(n * r, 1, dd.into_data())?;
    e[7] = rel_diff(&lhs, &kr(&cc.transpose(), &a).matmul(&vec_d)?);
    Ok(e)
}

pub(crate) fn appendix_suite_impl(seed: u64, cases: usize, skew: f64) -> Result<IdentityReport> {
    let mut rng = seeded_rng(seed);
    let mut checks: Vec<IdentityCheck> = NAMES
        .iter()
        .enumerate()
        .map(|(k, &name)| IdentityCheck { property: k + 1, name, cases, failures: 0, worst_error: 0.0 })
        .collect();
    for case in 0..cases {
        // Alternate real and complex instances.
        let errors = if case % 2 == 0 {
            identity_errors::<f64>(&mut rng, skew)?
        } else {
            identity_errors::<C64>(&mut rng, skew)?
        };
        for (check, err) in checks.iter_mut().zip(errors) {
            check.worst_error = check.worst_error.max(err);
            if !(err <= IDENTITY_TOL) {
                check.failures += 1;
            }
        }
    }
    log::debug!("Kronecker identity suite: seed {seed}, {cases} cases");
    Ok(IdentityReport { seed, tolerance: IDENTITY_TOL, checks })
}

/// Checks the eight standard Kronecker identities on `cases` seeded random
/// instances (sizes up to 4) to relative accuracy [`IDENTITY_TOL`].
pub fn appendix_identity_suite(seed: u64, cases: usize) -> Result<IdentityReport> {
    appendix_suite_impl(seed, cases, 0.0)
}
