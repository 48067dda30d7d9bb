//! Exact-arithmetic kernels for epipelagic local Langlands computations.
//!
//! Everything in this crate is computed over exact representations: finite
//! fields as polynomial quotients, character values as reduced roots of
//! unity, Gauss sums as cyclotomic integers, and lattice invariants through
//! Smith normal form. No verdict anywhere depends on floating point; the one
//! float that appears (the sign snap for ramified lambda constants) is
//! guarded by exact square identities.
//!
//! Module map:
//!
//! - [`exactnum`]: finite fields, roots of unity, cyclotomic integers,
//!   quadratic symbols, Gauss sums, and tame quadratic lambda constants.
//! - [`rootgalois`]: root data with finite Galois actions, orbit
//!   classification, gauges, Springer lifts, and the strip map.
//! - [`toralinv`]: the toral sign invariant of a maximal torus via its two
//!   combinatorial formulas, stable-class variation, and the Kottwitz sign.
//! - [`chidata`]: chi-data built from lambda constants applied to
//!   wild-restriction residue characters.
//! - [`glnllc`]: the GL(n) engine: dagger orbits, Langlands-Shelstad factor
//!   products, the rectifying character, and the end-to-end identity
//!   `chi_S = xi * mu_xi`.
//! - [`formaldeg`]: lattice coinvariants, fixed points, and the formal
//!   degree identity as exact symbolic q-powers.
//!
//! The companion `epikit-cli` crate exposes these checks as a batch CLI with
//! machine-readable reports.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod chidata;
pub mod exactnum;
pub mod formaldeg;
pub mod glnllc;
pub mod rootgalois;
pub mod toralinv;

use alloc::string::String;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("field cardinality {q} exceeds the configured bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("additive character must be nontrivial here")]
    TrivialCharacter,
    #[error("characters live over mismatched fields")]
    MismatchedFields,
    #[error("modulus must be odd and positive, got {0}")]
    BadJacobiModulus(i64),
    #[error("scale must be a nonzero residue")]
    ZeroScale,
    #[error("root is not symmetric")]
    AsymmetricRoot,
    #[error("vector has wrong dimension: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("word is not reduced: length {len}, inversion count {inversions}")]
    NotReducedWord { len: usize, inversions: usize },
    #[error("invalid Galois action: {0}")]
    InvalidAction(String),
    #[error("missing chi-data scale for an inertially symmetric orbit")]
    MissingWildScale,
    #[error("{0} is not a representative in Xi")]
    NotARepresentative(u64),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("non-elliptic data: {0}")]
    NotElliptic(String),
}

pub type Result<T> = core::result::Result<T, Error>;
