//! The `GL_n` engine: the Galois frame `<s> x| <Q>` on `Z/nZ`, dagger
//! orbits, Langlands-Shelstad factor products, the rectifying character,
//! and the end-to-end identity `chi_S = xi * mu_xi`.

mod generic;
mod lsfactors;
mod orbits;
mod parameter;
mod rectifier;

pub use generic::check_generic;
pub use lsfactors::{r_pxa_value, s_bp_closed_form, s_bp_value, LsFactor, WeilToken};
pub use orbits::{dagger_orbits, sgn_q_mod_n, DaggerOrbit, DaggerOrbitType, SgnReport};
pub use parameter::{parameter_model, ParameterModelReport};
pub use rectifier::{
    chi_s_over_xi, lambda_tower, rectifier_char, rectifier_value, verify_recti, ChiSOverXi,
    LambdaTowerReport, RectiReport,
};

use alloc::format;

use crate::exactnum::{FieldElement, FiniteField, PrimePower, RootOfUnity};
use crate::{Error, Result};

/// The Galois frame of a degree-`n` totally ramified situation over a base
/// with residue cardinality `q`: the group `<s> x| <Q>` acting on `Z/nZ`,
/// with `s = +1`, `Q = * q`, and `Q s Q^{-1} = s^q`. Its order is `n * f`
/// with `f = ord(q mod n)`.
#[derive(Debug, Clone)]
pub struct GLnGamma {
    n: u64,
    base: PrimePower,
    f: u32,
    q_pows: alloc::vec::Vec<u64>,
}

/// The element `s^k Q^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GammaElement {
    pub k: u64,
    pub t: u64,
}

impl GLnGamma {
    pub fn new(n: u64, base: PrimePower) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParameters(format!("need n >= 2, got {n}")));
        }
        if n % base.p() == 0 {
            // p odd is enforced by PrimePower, so p not dividing 2n
            // reduces to p not dividing n
            return Err(Error::BadParameters(format!(
                "residual characteristic {} divides 2n = {}",
                base.p(),
                2 * n
            )));
        }
        let mut f = 1u32;
        let mut acc = base.q() % n;
        while acc != 1 {
            acc = acc * (base.q() % n) % n;
            f += 1;
            if f as u64 > n {
                return Err(Error::BadParameters(format!(
                    "q = {} is not invertible mod n = {n}",
                    base.q()
                )));
            }
        }
        let mut q_pows = alloc::vec::Vec::with_capacity(f as usize);
        let mut pw = 1u64;
        for _ in 0..f {
            q_pows.push(pw);
            pw = pw * (base.q() % n) % n;
        }
        Ok(GLnGamma { n, base, f, q_pows })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn base(&self) -> PrimePower {
        self.base
    }

    pub fn q(&self) -> u64 {
        self.base.q()
    }

    /// `f = ord(q mod n)`, the inertia degree of the frame.
    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.n * self.f as u64
    }

    pub fn identity(&self) -> GammaElement {
        GammaElement { k: 0, t: 0 }
    }

    pub fn s(&self) -> GammaElement {
        GammaElement { k: 1, t: 0 }
    }

    pub fn q_gen(&self) -> GammaElement {
        GammaElement { k: 0, t: 1 }
    }

    /// `q^t mod n`.
    pub fn q_pow(&self, t: u64) -> u64 {
        self.q_pows[(t % self.f as u64) as usize]
    }

    pub fn mul(&self, a: GammaElement, b: GammaElement) -> GammaElement {
        GammaElement {
            k: (a.k + self.q_pow(a.t) * b.k) % self.n,
            t: (a.t + b.t) % self.f as u64,
        }
    }

    pub fn inv(&self, a: GammaElement) -> GammaElement {
        let t_inv = (self.f as u64 - a.t % self.f as u64) % self.f as u64;
        let k_inv = (self.n - self.q_pow(t_inv) * a.k % self.n) % self.n;
        GammaElement { k: k_inv, t: t_inv }
    }

    pub fn elements(&self) -> impl Iterator<Item = GammaElement> + '_ {
        let f = self.f as u64;
        (0..self.n).flat_map(move |k| (0..f).map(move |t| GammaElement { k, t }))
    }

    /// Action on the roots `(i, j)`, `i != j` in `Z/nZ`.
    pub fn act_root(&self, g: GammaElement, root: (u64, u64)) -> (u64, u64) {
        let scale = self.q_pow(g.t);
        ((g.k + scale * root.0) % self.n, (g.k + scale * root.1) % self.n)
    }

    /// Positivity in the upper-triangular convention on representatives
    /// `0..n`.
    pub fn root_is_positive(&self, root: (u64, u64)) -> bool {
        root.0 < root.1
    }
}

/// The data of an admissible pair at tame truncation: degree `n`, residue
/// field `k = F_q`, and the three components of the level-one character
/// `xi` of the truncated `E^x = Z x k^x x k`: its value at a fixed
/// uniformizer, its exponent on Teichmueller units against the field's
/// fixed generator, and its wild scale `c != 0` (so the depth is exactly
/// `1/n`).
#[derive(Debug, Clone)]
pub struct AdmissiblePairData {
    n: u64,
    field: FiniteField,
    gamma: GLnGamma,
    omega_value: RootOfUnity,
    tame_exponent: u64,
    wild_scale: FieldElement,
}

impl AdmissiblePairData {
    pub fn new(
        n: u64,
        field: FiniteField,
        omega_value: RootOfUnity,
        tame_exponent: u64,
        wild_scale: FieldElement,
    ) -> Result<Self> {
        if field.is_zero(&wild_scale) {
            return Err(Error::ZeroScale);
        }
        let gamma = GLnGamma::new(n, field.prime_power())?;
        let tame_exponent = tame_exponent % (field.q() - 1);
        Ok(AdmissiblePairData { n, field, gamma, omega_value, tame_exponent, wild_scale })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn gamma(&self) -> &GLnGamma {
        &self.gamma
    }

    pub fn omega_value(&self) -> RootOfUnity {
        self.omega_value
    }

    pub fn tame_exponent(&self) -> u64 {
        self.tame_exponent
    }

    pub fn wild_scale(&self) -> &FieldElement {
        &self.wild_scale
    }

    /// `xi` as a character of the truncated `E^x`.
    pub fn xi(&self) -> TruncatedEChar {
        TruncatedEChar {
            omega: self.omega_value,
            tame_exponent: self.tame_exponent,
            wild_scale: self.wild_scale.clone(),
        }
    }
}

/// A character of the truncated group `Z x k^x x k` (valuation,
/// Teichmueller, depth-one units), stored by its value at the uniformizer,
/// its exponent on the fixed generator of `k^x`, and the scale of its wild
/// component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedEChar {
    pub omega: RootOfUnity,
    pub tame_exponent: u64,
    pub wild_scale: FieldElement,
}

impl TruncatedEChar {
    pub fn trivial(field: &FiniteField) -> Self {
        TruncatedEChar {
            omega: RootOfUnity::one(),
            tame_exponent: 0,
            wild_scale: field.zero(),
        }
    }

    pub fn mul(&self, other: &Self, field: &FiniteField) -> Self {
        TruncatedEChar {
            omega: self.omega.mul(&other.omega),
            tame_exponent: (self.tame_exponent + other.tame_exponent) % (field.q() - 1),
            wild_scale: field.add(&self.wild_scale, &other.wild_scale),
        }
    }

    pub fn inv(&self, field: &FiniteField) -> Self {
        let q1 = field.q() - 1;
        TruncatedEChar {
            omega: self.omega.inv(),
            tame_exponent: (q1 - self.tame_exponent % q1) % q1,
            wild_scale: field.neg(&self.wild_scale),
        }
    }
}
