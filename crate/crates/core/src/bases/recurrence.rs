//! Three-term recurrences for the orthonormal Hermite and generalized
//! Laguerre families, carried with a running logarithmic scale so that
//! neither the polynomial growth nor the exponential damping over- or
//! underflows at large degree.

use std::f64::consts::PI;

const RESCALE_AT: f64 = 1e100;

/// Runs `p_{n+1} = step(n, p_n, p_{n-1})` from `p_0 = 1 * exp(log0)` and
/// calls `visit(n, p_n_scaled, log_scale)` for `n = 0..count`, where the
/// true value is `p_n_scaled * exp(log_scale)`.
fn run(count: usize, log0: f64, step: impl Fn(usize, f64, f64) -> f64, mut visit: impl FnMut(usize, f64, f64)) {
    let (mut prev, mut cur, mut log_scale) = (0.0, 1.0, log0);
    for n in 0..count {
        visit(n, cur, log_scale);
        let next = step(n, cur, prev);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            log_scale += RESCALE_AT.ln();
        }
    }
}

fn unscale(p: f64, log_scale: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p.signum() * (p.abs().ln() + log_scale).exp()
    }
}

fn hermite_step(y: f64) -> impl Fn(usize, f64, f64) -> f64 {
    move |n, p, q| {
        let n1 = n as f64 + 1.0;
        (2.0 / n1).sqrt() * y * p - (n as f64 / n1).sqrt() * q
    }
}

fn laguerre_step(alpha: f64, y: f64) -> impl Fn(usize, f64, f64) -> f64 {
    move |n, p, q| {
        let nf = n as f64;
        ((2.0 * nf + 1.0 + alpha - y) * p - (nf * (nf + alpha)).sqrt() * q) / ((nf + 1.0) * (nf + 1.0 + alpha)).sqrt()
    }
}

fn log_norm_hermite() -> f64 {
    -0.25 * PI.ln()
}

fn log_norm_laguerre(alpha: f64) -> f64 {
    -0.5 * libm::lgamma(alpha + 1.0)
}

/// `psi_n(y) = p_n(y) exp(-y^2/2)` for `n = 0..out.len()`, orthonormal in
/// `L^2(R)`.
pub(crate) fn hermite_functions(y: f64, out: &mut [f64]) {
    run(out.len(), log_norm_hermite() - 0.5 * y * y, hermite_step(y), |n, p, s| out[n] = unscale(p, s));
}

/// `ln sum_{n<m} p_n(y)^2` for the orthonormal Hermite polynomials.
pub(crate) fn hermite_sq_sum(m: usize, y: f64) -> f64 {
    sq_sum(m, log_norm_hermite(), hermite_step(y))
}

/// `p_m(y) / p_{m-1}(y)`.
pub(crate) fn hermite_ratio(m: usize, y: f64) -> f64 {
    ratio(m, hermite_step(y))
}

/// `l_n(y) = p_n(y) y^{alpha/2} exp(-y/2)` for `n = 0..out.len()`,
/// orthonormal in `L^2(R+)`. Requires `y > 0`, or `y == 0` with
/// `alpha >= 0`.
pub(crate) fn laguerre_functions(alpha: f64, y: f64, out: &mut [f64]) {
    debug_assert!(y > 0.0 || (y == 0.0 && alpha >= 0.0));
    if y == 0.0 && alpha > 0.0 {
        out.fill(0.0);
        return;
    }
    let damp = if y == 0.0 { 0.0 } else { 0.5 * alpha * y.ln() - 0.5 * y };
    run(out.len(), log_norm_laguerre(alpha) + damp, laguerre_step(alpha, y), |n, p, s| out[n] = unscale(p, s));
}

/// `ln sum_{n<m} p_n(y)^2` for the orthonormal generalized Laguerre
/// polynomials.
pub(crate) fn laguerre_sq_sum(m: usize, alpha: f64, y: f64) -> f64 {
    sq_sum(m, log_norm_laguerre(alpha), laguerre_step(alpha, y))
}

pub(crate) fn laguerre_ratio(m: usize, alpha: f64, y: f64) -> f64 {
    ratio(m, laguerre_step(alpha, y))
}

fn sq_sum(m: usize, log0: f64, step: impl Fn(usize, f64, f64) -> f64) -> f64 {
    // Accumulate in the scale of the latest term.
    let (mut acc, mut acc_scale) = (0.0f64, log0);
    run(m, log0, step, |_, p, s| {
        if s != acc_scale {
            acc *= (2.0 * (acc_scale - s)).exp();
            acc_scale = s;
        }
        acc += p * p;
    });
    acc.ln() + 2.0 * acc_scale
}

fn ratio(m: usize, step: impl Fn(usize, f64, f64) -> f64) -> f64 {
    let (mut last, mut before) = ((0.0, 0.0), (0.0, 0.0));
    run(m + 1, 0.0, step, |n, p, s| {
        if n + 1 == m {
            before = (p, s);
        } else if n == m {
            last = (p, s);
        }
    });
    last.0 / before.0 * (last.1 - before.1).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_matches_explicit_low_degree() {
        let y = 0.7f64;
        let mut v = [0.0; 4];
        hermite_functions(y, &mut v);
        let e = (-y * y / 2.0).exp() / PI.powf(0.25);
        let h = [1.0, 2.0 * y, 4.0 * y * y - 2.0, 8.0 * y.powi(3) - 12.0 * y];
        let norms = [1.0, 2.0, 8.0, 48.0];
        for n in 0..4 {
            let expect = e * h[n] / f64::sqrt(norms[n]);
            assert!((v[n] - expect).abs() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn laguerre_matches_explicit_low_degree() {
        let (alpha, y) = (1.5f64, 2.2f64);
        let mut v = [0.0; 3];
        laguerre_functions(alpha, y, &mut v);
        let g = |x: f64| libm::tgamma(x);
        let l = [1.0, 1.0 + alpha - y, 0.5 * (y * y - 2.0 * (alpha + 2.0) * y + (alpha + 1.0) * (alpha + 2.0))];
        for n in 0..3 {
            let c = (g(n as f64 + 1.0) / g(n as f64 + alpha + 1.0)).sqrt();
            let expect = c * l[n] * y.powf(alpha / 2.0) * (-y / 2.0).exp();
            assert!((v[n] - expect).abs() < 1e-14, "n={n}: {} vs {expect}", v[n]);
        }
    }

    #[test]
    fn large_degree_stays_finite() {
        let mut v = vec![0.0; 400];
        for y in [0.0, 3.0, 25.0, 40.0] {
            hermite_functions(y, &mut v);
            assert!(v.iter().all(|x| x.is_finite() && x.abs() < 1.0));
        }
        for y in [1e-3, 10.0, 300.0, 900.0] {
            laguerre_functions(4.0, y, &mut v);
            assert!(v.iter().all(|x| x.is_finite() && x.abs() < 1.0));
        }
        assert!(hermite_sq_sum(400, 30.0).is_finite());
    }
}
