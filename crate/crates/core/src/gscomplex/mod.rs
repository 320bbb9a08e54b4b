mod bicomplex;
mod oracle;

pub use bicomplex::{gs_cohomology, GsBicomplex, GsCohomology};
pub use oracle::{deformation_oracle, DeformationCount};
