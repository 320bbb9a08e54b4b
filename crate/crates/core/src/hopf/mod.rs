mod algebra;
mod builtin;
mod json;

pub use algebra::{opposite, tensor_hopf, validate_bialgebra, validate_hopf, AxiomFailure, Bialgebra, HopfAlgebra};
pub use builtin::{builtin, group_algebra, random_basis_change, sweedler, trivial};
pub use json::HopfJson;
