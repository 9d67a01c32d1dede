//! Basis families, Gaussian quadrature, Chebyshev interpolation data and
//! finite-difference stencils.

mod chebyshev;
mod functions;
mod quadrature;
mod recurrence;
mod stencil;

pub use chebyshev::{barycentric_matrix, chebyshev_points_weights};
pub use functions::{hermite_basis_matrix, hermite_beta, laguerre_basis_matrix, laguerre_beta, BasisPlan};
pub use quadrature::{gauss_hermite, gauss_laguerre_generalized, QuadRule};
pub use stencil::{ada_stencil, laplacian_stencil, Boundary, StencilMatrix};
