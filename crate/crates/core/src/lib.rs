//! Exact computations with dg categories, dg quotients, Hopf algebras,
//! tetramodules and bialgebra deformation complexes over the rationals.

pub mod cli;
pub mod cochain;
pub mod dgcat;
pub mod error;
pub mod gscomplex;
pub mod hopf;
pub mod linalg;
pub mod monoidal2;
pub mod simplicial;
pub mod tetra;

pub use error::{Error, Result};
