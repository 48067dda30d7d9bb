//! Root data with finite Galois actions: orbit classification, gauges,
//! pairings, and exact monomial-matrix models of Weyl-group lifts.
//!
//! The character lattice is `Z^rank` in a fixed basis; roots live in it as
//! integer vectors and coroots in the dual basis, so the pairing is the dot
//! product. Group actions are given by integer matrices on the character
//! lattice that permute the root set.

mod action;
mod datum;
mod monomial;

pub use action::{GaloisRootAction, RootOrbit};
pub use datum::{Gauge, RootDatum};
pub use monomial::{
    inversions, perm_from_word, perm_parity, reduced_word, springer_lift, strip_defect,
    strip_defect_closed, TorusMonomialElement,
};
