//! Finite intervals, Leinster monoids and pre-monoids in complexes, and the
//! simplicial construction from a strict monoidal dg category.

mod algebra;
mod fint;
mod kld;
mod monoidal;
mod nerve;
mod pipeline;
mod premonoid;

pub use algebra::{DgAlgebra, DgAlgebraJson, TensorPower};
pub use kld::{bimodule_model, kld_desk_check, KldReport};
pub use fint::{fint_compose, fint_homset, fint_tensor, FintMorphism};
pub use monoidal::{absorbing_monoidal, chaotic_monoidal, trivial_monoidal, MorphismProduct, StrictMonoidal, StrictMonoidalJson};
pub use nerve::{leinster_nerve, leinster_nerve_unchecked};
pub use pipeline::{deligne_pipeline, PipelineOptions, PipelineOutput, PipelineSummary};
pub use premonoid::{validate_leinster, Classification, ColaxVerdict, LeinsterPreMonoid, LeinsterReport};
