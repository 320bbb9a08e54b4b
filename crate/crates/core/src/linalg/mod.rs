//! Exact linear algebra over the rationals.

pub mod elim;
pub mod map;
pub mod scalar;
pub mod space;
pub mod subquotient;
pub mod vector;

pub use elim::{determinant, image_basis, inverse, kernel_basis, rank, rank_of, solve, Echelon};
pub use map::{permute_factors, swap, LinearMap};
pub use scalar::{format_scalar, int, parse_scalar, Scalar};
pub use space::Space;
pub use subquotient::{subquotient, Mode, SubQuotient};
pub use vector::{Accum, SVec};
