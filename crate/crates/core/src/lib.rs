//! Dense tensors with mu-mode products, Tucker operators and Kronecker-sum
//! actions, plus the numerical building blocks and drivers built on them.
//!
//! Tensors are stored column-major (first index fastest) and modes are
//! numbered from 0.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apps;
pub mod bases;
pub mod error;
pub mod kron;
pub mod linalg;
pub mod random;
pub mod scalar;
pub mod tensor;
pub mod tucker;
pub mod validate;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use scalar::{Scalar, C64};
pub use tensor::{ColumnFn, ColumnOperator, Identity, Shape, Tensor};
pub use tucker::{cttucker, itucker, kronsumv, tucker, tuckerfun, FactorizedStack};
