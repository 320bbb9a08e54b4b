mod decompose;
mod hopf_module;
mod json;
mod tetramodule;

pub use decompose::{generator_factorization, tetra_decomposition_report, two_sided_coinvariants, TetraDecomposition, TetraDecompositionReport};
pub use hopf_module::{
    coinvariants, free_hopf_module, fundamental_decomposition, left_hopf_module, regular_hopf_module, Decomposition,
    DecompositionReport, HopfModule,
};
pub use json::{BaseRef, TetraJson};
pub use tetramodule::{
    find_isomorphism, free_tetramodule, regular_tetramodule, tetra_homs, validate_tetramodule, Tetramodule};
