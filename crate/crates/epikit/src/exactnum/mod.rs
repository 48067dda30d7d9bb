//! Exact arithmetic over finite fields, roots of unity, and cyclotomic
//! integers, together with the quadratic symbols, Gauss sums, and tame
//! quadratic lambda constants built on top of them.

mod charac;
mod cyclo;
mod field;
mod rootu;
mod symbols;

pub use charac::{
    gauss_sum, gauss_sum_quadratic, lambda_quadratic, AdditiveCharacter, ExtensionKind,
    MultiplicativeCharacter,
};
pub use cyclo::{cyclotomic_polynomial, Cyclotomic, CyclotomicInteger, CyclotomicTensor};
pub use field::{FieldElement, FiniteField, PrimePower, DEFAULT_MAX_FIELD};
pub use rootu::RootOfUnity;
pub use symbols::{jacobi, minus_one_symbol, quadratic_symbol};
