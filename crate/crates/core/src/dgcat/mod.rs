mod category;
mod colax;
mod examples;
mod functor;
mod quotient;
mod tensor;

pub use category::{
    compose_vecs, hom_basis, small_complex, validate_dg_category, DgCat, DgCategory, DgCategoryBuilder,
    DgCategoryJson, Elem, Violation,
};
pub use quotient::{drinfeld_quotient, generalized_quotient, Chain, QuotientCategory, QuotientHom, QuotientOptions};
pub use tensor::{tensor_dgcat, tensor_pcat, unit_category, PCat, TensorCategory, TensorHom};
pub use functor::{
    chain_functor, chain_hom_map, check_functor, hom_component, induced_quotient_functor, inclusion_functor, psi_comparison,
    quasi_equivalence_check, DgFunctor, EssentialImage, HomComparison, PsiComparison, QuasiEquivalenceReport, Witness,
};
pub use colax::{
    colax_beta, colax_coassociativity, colax_functor, colax_hom_map, identity_functor, tensor_functor, word_vec, CoassociativityReport,
    ColaxBeta,
};
pub use examples::{contractible_pair_algebra, two_object_example, two_object_pcat};
