use thiserror::Error;

/// Errors reported by tensor kernels, solvers and drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand extents that do not fit together.
    #[error("size mismatch: {0}")]
    Size(String),

    /// Invalid argument value (bad permutation, mode out of range, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A pivot vanished during factorization.
    #[error("matrix is singular (zero pivot at column {column})")]
    Singular { column: usize },

    /// Iteration failed to converge or broke down.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A user supplied operator broke its declared contract.
    #[error("operator contract violated: {0}")]
    Contract(String),

    /// Evaluation point outside the domain of a function family.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested allocation exceeds the configured cap.
    #[error("allocation of {requested} bytes exceeds the cap of {cap} bytes")]
    MemoryCap { requested: u64, cap: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! size_err {
    ($($arg:tt)*) => { $crate::error::Error::Size(format!($($arg)*)) };
}
macro_rules! arg_err {
    ($($arg:tt)*) => { $crate::error::Error::Argument(format!($($arg)*)) };
}
pub(crate) use arg_err;
pub(crate) use size_err;
