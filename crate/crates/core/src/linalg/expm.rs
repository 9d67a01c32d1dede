//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3, 5, 7, 9 or 13.

use crate::error::{arg_err, size_err, Result};
use crate::linalg::{lu_factor, Matrix};
use crate::scalar::Scalar;

const PADE3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// 1-norm thresholds below which the degree-m approximant is accurate to
// unit roundoff in backward error.
const THETA: [(usize, f64); 4] = [
    (3, 1.495585217958292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097_847_961_257_068),
];
const THETA13: f64 = 5.371920351148152e0;

pub fn expm<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(size_err!("expm needs a square matrix, got {}x{}", a.rows(), a.cols()));
    }
    if !a.is_finite() {
        return Err(arg_err!("expm input has non-finite entries"));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(a.clone());
    }
    let norm = a.norm_one();
    for &(degree, theta) in &THETA {
        if norm <= theta {
            let coeffs: &[f64] = match degree {
                3 => &PADE3,
                5 => &PADE5,
                7 => &PADE7,
                _ => &PADE9,
            };
            let (u, v) = pade_low(a, coeffs)?;
            return pade_quotient(&u, &v);
        }
    }
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let scaled = a.scale(T::from_f64(0.5f64.powi(squarings)));
    let (u, v) = pade13(&scaled)?;
    let mut r = pade_quotient(&u, &v)?;
    for _ in 0..squarings {
        r = r.matmul(&r)?;
    }
    Ok(r)
}

/// `U`, `V` for degrees up to 9 from even powers of `A`.
fn pade_low<T: Scalar>(a: &Matrix<T>, b: &[f64]) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = a.rows();
    let a2 = a.matmul(a)?;
    let half = b.len() / 2;
    let mut powers = vec![Matrix::identity(n), a2.clone()];
    while powers.len() < half {
        let next = powers.last().unwrap().matmul(&a2)?;
        powers.push(next);
    }
    let mut odd = Matrix::zeros(n, n);
    let mut even = Matrix::zeros(n, n);
    for (j, p) in powers.iter().enumerate() {
        odd = odd.add(&p.scale(T::from_f64(b[2 * j + 1])))?;
        even = even.add(&p.scale(T::from_f64(b[2 * j])))?;
    }
    Ok((a.matmul(&odd)?, even))
}

fn pade13<T: Scalar>(a: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let b = |k: usize| T::from_f64(PADE13[k]);
    let n = a.rows();
    let id = Matrix::<T>::identity(n);
    let a2 = a.matmul(a)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;
    let inner_u = a6.scale(b(13)).add(&a4.scale(b(11)))?.add(&a2.scale(b(9)))?;
    let u = a6
        .matmul(&inner_u)?
        .add(&a6.scale(b(7)))?
        .add(&a4.scale(b(5)))?
        .add(&a2.scale(b(3)))?
        .add(&id.scale(b(1)))?;
    let u = a.matmul(&u)?;
    let inner_v = a6.scale(b(12)).add(&a4.scale(b(10)))?.add(&a2.scale(b(8)))?;
    let v = a6
        .matmul(&inner_v)?
        .add(&a6.scale(b(6)))?
        .add(&a4.scale(b(4)))?
        .add(&a2.scale(b(2)))?
        .add(&id.scale(b(0)))?;
    Ok((u, v))
}

/// `(V - U)^{-1} (V + U)`.
fn pade_quotient<T: Scalar>(u: &Matrix<T>, v: &Matrix<T>) -> Result<Matrix<T>> {
    let q = lu_factor(&v.sub(u)?)?;
    q.solve(&v.add(u)?)
}
