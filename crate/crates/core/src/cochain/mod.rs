//! Bounded cochain complexes over the rationals.

pub mod complex;
pub mod lambda;
pub mod map;
pub mod ops;

pub use complex::CochainComplex;
pub use lambda::{lambda_complex, lambda_maps, Lambda, LambdaMaps};
pub use map::{ComplexMap, QuasiIsoReport};
pub use ops::{cone, tensor_complexes, tensor_maps, TensorComplex};
