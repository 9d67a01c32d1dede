//! Scalar abstraction over `f64` and `Complex64`.
//!
//! Every tensor and matrix is either all-real or all-complex. The GEMM entry
//! point lives on the trait so kernels can stay generic while dispatching to
//! the right `matrixmultiply` routine.

use std::fmt::Debug;
use std::iter::Sum;

use num_complex::Complex64;
use num_traits::NumAssign;

pub use num_complex::Complex64 as C64;

pub trait Scalar:
    Copy + Debug + Send + Sync + PartialEq + NumAssign + Sum + std::ops::Neg<Output = Self> + 'static
{
    /// True when the type has no imaginary part, so conjugation is free.
    const IS_REAL: bool;

    fn from_f64(x: f64) -> Self;
    fn conj(self) -> Self;
    fn modulus(self) -> f64;
    fn re(self) -> f64;
    fn is_finite(self) -> bool;

    /// `C <- A B + beta C` on raw strided storage.
    ///
    /// # Safety
    /// Pointers and strides must describe valid, non-overlapping (`c`)
    /// regions of the stated extents.
    #[allow(clippy::too_many_arguments)]
    unsafe fn gemm_raw(
        m: usize,
        k: usize,
        n: usize,
        a: *const Self,
        rsa: isize,
        csa: isize,
        b: *const Self,
        rsb: isize,
        csb: isize,
        beta: Self,
        c: *mut Self,
        rsc: isize,
        csc: isize,
    );
}

impl Scalar for f64 {
    const IS_REAL: bool = true;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.abs()
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    unsafe fn gemm_raw(
        m: usize,
        k: usize,
        n: usize,
        a: *const Self,
        rsa: isize,
        csa: isize,
        b: *const Self,
        rsb: isize,
        csb: isize,
        beta: Self,
        c: *mut Self,
        rsc: isize,
        csc: isize,
    ) {
        matrixmultiply::dgemm(m, k, n, 1.0, a, rsa, csa, b, rsb, csb, beta, c, rsc, csc);
    }
}

impl Scalar for Complex64 {
    const IS_REAL: bool = false;

    #[inline]
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.norm()
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    unsafe fn gemm_raw(
        m: usize,
        k: usize,
        n: usize,
        a: *const Self,
        rsa: isize,
        csa: isize,
        b: *const Self,
        rsb: isize,
        csb: isize,
        beta: Self,
        c: *mut Self,
        rsc: isize,
        csc: isize,
    ) {
        use matrixmultiply::CGemmOption;
        // Complex64 and [f64; 2] share layout.
        matrixmultiply::zgemm(
            CGemmOption::Standard,
            CGemmOption::Standard,
            m,
            k,
            n,
            [1.0, 0.0],
            a as *const [f64; 2],
            rsa,
            csa,
            b as *const [f64; 2],
            rsb,
            csb,
            [beta.re, beta.im],
            c as *mut [f64; 2],
            rsc,
            csc,
        );
    }
}

/// Largest modulus in a slice, 0 for an empty slice.
pub fn max_abs<T: Scalar>(xs: &[T]) -> f64 {
    xs.iter().fold(0.0, |acc, x| acc.max(x.modulus()))
}

/// `max|a - b| / max|b|`, falling back to the absolute difference when `b` vanishes.
pub fn rel_inf_error<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    assert_eq!(a.len(), b.len(), "rel_inf_error: length mismatch");
    let diff = a
        .iter()
        .zip(b)
        .fold(0.0f64, |acc, (x, y)| acc.max((*x - *y).modulus()));
    let scale = max_abs(b);
    if scale > 0.0 {
        diff / scale
    } else {
        diff
    }
}

/// `||a - b||_2 / ||b||_2`, falling back to the absolute norm when `b` vanishes.
pub fn rel_l2_error<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    assert_eq!(a.len(), b.len(), "rel_l2_error: length mismatch");
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (*x - *y).modulus().powi(2)).sum();
    let scale: f64 = b.iter().map(|y| y.modulus().powi(2)).sum();
    if scale > 0.0 {
        (diff / scale).sqrt()
    } else {
        diff.sqrt()
    }
}
