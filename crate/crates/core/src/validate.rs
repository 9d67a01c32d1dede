//! Seeded self-checks: every Tucker variant against the explicit
//! Kronecker-product oracle, and the standard Kronecker identities.

use std::str::FromStr;

use rand::Rng;

use crate::error::{arg_err, Error, Result};
use crate::kron::{appendix_suite_impl, kron_apply_oracle};
use crate::linalg::Matrix;
use crate::random::{random_matrix, random_tensor, seeded_rng, SampleNormal, SeededRng};
use crate::scalar::{rel_inf_error, C64};
use crate::tensor::{ColumnOperator, Tensor};
use crate::tucker::{tucker, tucker_sequential, tuckerfun};

pub const ORACLE_TOL: f64 = 1e-13;
pub const ORACLE_CASES: usize = 200;
pub const APPENDIX_CASES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Oracle,
    Appendix,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "oracle" => Ok(Self::Oracle),
            "appendix" => Ok(Self::Appendix),
            _ => Err(arg_err!("unknown suite '{s}' (expected all, oracle or appendix)")),
        }
    }
}

/// Deliberate corruption used to check that the suites can fail.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Relative perturbation of one entry of the result under test.
    Skew(f64),
}

impl Fault {
    fn skew(self) -> f64 {
        match self {
            Fault::None => 0.0,
            Fault::Skew(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub worst_error: f64,
    pub tolerance: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

/// Worst relative deviation of `tucker`, `tucker_sequential` and
/// `tuckerfun` from the Kronecker oracle on one random instance.
fn oracle_case<T: SampleNormal>(rng: &mut SeededRng, skew: f64) -> Result<f64> {
    let d = rng.random_range(1..=5);
    let m: Vec<usize> = (0..d).map(|_| rng.random_range(1..=4)).collect();
    let n: Vec<usize> = (0..d).map(|_| rng.random_range(1..=4)).collect();
    let t: Tensor<T> = random_tensor(rng, &m);
    let ls: Vec<Matrix<T>> = m.iter().zip(&n).map(|(&mm, &nn)| random_matrix(rng, nn, mm)).collect();
    let expect = kron_apply_oracle(&ls, &t)?;
    let mut fused = tucker(&t, &ls)?;
    fused.data_mut()[0] *= T::from_f64(1.0 + skew);
    let ops: Vec<&dyn ColumnOperator<T>> = ls.iter().map(|l| l as &dyn ColumnOperator<T>).collect();
    let candidates = [fused, tucker_sequential(&t, &ls)?, tuckerfun(&t, &ops)?];
    let mut worst = 0.0f64;
    for c in &candidates {
        if c.extents() != expect.extents() {
            return Ok(f64::INFINITY);
        }
        worst = worst.max(rel_inf_error(c.data(), expect.data()));
    }
    Ok(worst)
}

/// Tucker variants against `(L_d x ... x L_1) vec(T)` on `cases` random
/// instances of order 1 to 5 with extents up to 4, alternating real and
/// complex data.
pub fn oracle_equivalence_suite(seed: u64, cases: usize, fault: Fault) -> Result<SuiteResult> {
    let mut rng = seeded_rng(seed);
    let (mut failures, mut worst) = (0, 0.0f64);
    for case in 0..cases {
        let err = if case % 2 == 0 {
            oracle_case::<f64>(&mut rng, fault.skew())?
        } else {
            oracle_case::<C64>(&mut rng, fault.skew())?
        };
        worst = worst.max(err);
        if !(err <= ORACLE_TOL) {
            failures += 1;
        }
    }
    Ok(SuiteResult { name: "oracle", cases, failures, worst_error: worst, tolerance: ORACLE_TOL })
}

/// The eight Kronecker identities, summarized as one suite.
pub fn appendix_suite(seed: u64, cases: usize, fault: Fault) -> Result<SuiteResult> {
    let report = appendix_suite_impl(seed, cases, fault.skew())?;
    let failures = report.checks.iter().map(|c| c.failures).sum();
    Ok(SuiteResult { name: "appendix", cases, failures, worst_error: report.worst_error(), tolerance: report.tolerance })
}

/// Runs the selected suites with their default case counts.
pub fn run_validation(seed: u64, suite: Suite, fault: Fault) -> Result<ValidationReport> {
    let mut suites = Vec::new();
    if matches!(suite, Suite::All | Suite::Oracle) {
        suites.push(oracle_equivalence_suite(seed, ORACLE_CASES, fault)?);
    }
    if matches!(suite, Suite::All | Suite::Appendix) {
        suites.push(appendix_suite(seed, APPENDIX_CASES, fault)?);
    }
    Ok(ValidationReport { seed, suites })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let r = run_validation(7, Suite::All, Fault::None).unwrap();
        assert_eq!(r.suites.len(), 2);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn injected_fault_is_caught() {
        let r = run_validation(7, Suite::All, Fault::Skew(1e-6)).unwrap();
        assert!(r.suites.iter().all(|s| !s.passed()));
    }

    #[test]
    fn suite_filter() {
        let r = run_validation(1, Suite::Appendix, Fault::None).unwrap();
        assert_eq!(r.suites.iter().map(|s| s.name).collect::<Vec<_>>(), ["appendix"]);
        assert_eq!("oracle".parse::<Suite>().unwrap(), Suite::Oracle);
        assert!("everything".parse::<Suite>().is_err());
    }
}
