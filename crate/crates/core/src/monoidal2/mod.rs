mod braiding;
mod exactness;
mod products;

pub use braiding::{braiding, eckmann_hilton, lambda_prime, Braiding, BraidingReport, EckmannHiltonReport};
pub use exactness::{
    exactness_check, kernel_sequence, multiplication_sequence, split_sequence, ExactnessReport, SequenceExactness, ShortExactSequence, Side,
    SideReport,
};
pub use products::{
    compare_products, external_product, internal_product, unit_comparisons, InternalProduct, ProductComparison, UnitComparison,
    Variant,
};
