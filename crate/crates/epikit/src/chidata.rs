//! Chi-data: for each orbit of roots a character of the attached local
//! field, trivial on norms, at tame truncation.
//!
//! Asymmetric orbits carry the trivial character. Symmetric but not
//! inertially symmetric orbits (unramified quadratic extension downstairs)
//! carry the unramified order-two character, value `-1` at any uniformizer.
//! Inertially symmetric orbits (ramified quadratic extension) carry the
//! tame character whose value at a uniformizer is the inverse of the
//! ramified lambda constant of the residue character cut out by the wild
//! restriction data.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::exactnum::{
    lambda_quadratic, minus_one_symbol, AdditiveCharacter, ExtensionKind, FieldElement,
    FiniteField, RootOfUnity,
};
use crate::rootgalois::{GaloisRootAction, RootOrbit};
use crate::{Error, Result};

/// Classification of an orbit for chi-data purposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    Asymmetric,
    SymmetricUnramified,
    SymmetricRamified,
}

/// Behavior of the character on units at tame truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitRestriction {
    Trivial,
    /// Nontrivial only through the parity of the unramified valuation.
    UnramifiedParity,
    /// The Legendre symbol on Teichmueller representatives.
    LegendreOnTeichmuller,
}

/// One chi-data character, described at tame truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiDatum {
    pub kind: OrbitKind,
    pub value_at_uniformizer: RootOfUnity,
    pub unit_restriction: UnitRestriction,
}

/// Scales of the residue additive characters `x -> psi(c_alpha x)` cut out
/// by the wild restriction on each inertially symmetric orbit (keyed by the
/// orbit representative), with an optional default.
#[derive(Debug, Clone)]
pub struct WildRestriction {
    field: FiniteField,
    default_scale: Option<FieldElement>,
    scales: BTreeMap<usize, FieldElement>,
}

impl WildRestriction {
    pub fn new(field: FiniteField) -> Self {
        WildRestriction { field, default_scale: None, scales: BTreeMap::new() }
    }

    /// Use `c` for every inertially symmetric orbit not otherwise covered.
    pub fn with_default_scale(mut self, c: FieldElement) -> Result<Self> {
        if self.field.is_zero(&c) {
            return Err(Error::ZeroScale);
        }
        self.default_scale = Some(c);
        Ok(self)
    }

    pub fn with_scale(mut self, orbit_representative: usize, c: FieldElement) -> Result<Self> {
        if self.field.is_zero(&c) {
            return Err(Error::ZeroScale);
        }
        self.scales.insert(orbit_representative, c);
        Ok(self)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn scale_for(&self, orbit_representative: usize) -> Result<FieldElement> {
        self.scales
            .get(&orbit_representative)
            .cloned()
            .or_else(|| self.default_scale.clone())
            .ok_or(Error::MissingWildScale)
    }
}

/// The residue additive character of the wild restriction after moving to
/// the uniformizer scaled by the unit `u`: scale `c * u`.
pub fn xi_alpha_omega(
    field: &FiniteField,
    c: &FieldElement,
    u: &FieldElement,
) -> Result<AdditiveCharacter> {
    if field.is_zero(c) || field.is_zero(u) {
        return Err(Error::ZeroScale);
    }
    Ok(AdditiveCharacter::new(field, field.mul(c, u)))
}

/// The chi-data value at a uniformizer scaled by the unit `u`.
pub fn chi_alpha_uniformizer(
    orbit: &RootOrbit,
    wild: &WildRestriction,
    u: &FieldElement,
) -> Result<RootOfUnity> {
    if !orbit.symmetric {
        return Ok(RootOfUnity::one());
    }
    if !orbit.inertially_symmetric {
        return Ok(RootOfUnity::minus_one());
    }
    let field = wild.field();
    let c = wild.scale_for(orbit.representative)?;
    let xi = xi_alpha_omega(field, &c, u)?;
    Ok(lambda_quadratic(ExtensionKind::Ramified, field, &xi)?.inv())
}

/// Per-orbit record of the chi-data axioms, checked on the residue model.
#[derive(Debug, Clone)]
pub struct OrbitAxiomRecord {
    pub orbit_representative: usize,
    pub kind: OrbitKind,
    /// Negating the root multiplies the uniformizer value by `(-1/q)`.
    pub sign_flip_ok: bool,
    /// Scaling the uniformizer by a Teichmueller unit `u` multiplies the
    /// value by the Legendre symbol of `u`.
    pub teichmuller_ok: bool,
    /// `chi(omega^2) = (-1/q)`: triviality on the norm subgroup at depth.
    pub norm_depth_ok: bool,
}

impl OrbitAxiomRecord {
    pub fn ok(&self) -> bool {
        self.sign_flip_ok && self.teichmuller_ok && self.norm_depth_ok
    }
}

/// Result of [`chi_data_build`]: the chi-data family plus its axiom report.
#[derive(Debug, Clone)]
pub struct ChiDataFamily {
    pub data: BTreeMap<usize, ChiDatum>,
    pub report: Vec<OrbitAxiomRecord>,
}

impl ChiDataFamily {
    pub fn all_axioms_ok(&self) -> bool {
        self.report.iter().all(|r| r.ok())
    }

    pub fn datum_for(&self, orbit_representative: usize) -> Option<&ChiDatum> {
        self.data.get(&orbit_representative)
    }
}

/// Build the full chi-data family for an action, verifying the residue
/// axioms orbit by orbit.
pub fn chi_data_build(action: &GaloisRootAction, wild: &WildRestriction) -> Result<ChiDataFamily> {
    let field = wild.field();
    let one = field.one();
    let minus_one_q = minus_one_symbol(field.q());
    let mut data = BTreeMap::new();
    let mut report = Vec::new();
    for orbit in action.orbits() {
        let rep = orbit.representative;
        let kind = if !orbit.symmetric {
            OrbitKind::Asymmetric
        } else if !orbit.inertially_symmetric {
            OrbitKind::SymmetricUnramified
        } else {
            OrbitKind::SymmetricRamified
        };
        let value = chi_alpha_uniformizer(orbit, wild, &one)?;
        let unit_restriction = match kind {
            OrbitKind::Asymmetric => UnitRestriction::Trivial,
            OrbitKind::SymmetricUnramified => UnitRestriction::UnramifiedParity,
            OrbitKind::SymmetricRamified => UnitRestriction::LegendreOnTeichmuller,
        };
        let record = match kind {
            OrbitKind::SymmetricRamified => {
                let c = wild.scale_for(rep)?;
                // negating the root inverts the wild restriction, so the
                // residue scale negates
                let neg_value = {
                    let xi = xi_alpha_omega(field, &field.neg(&c), &one)?;
                    lambda_quadratic(ExtensionKind::Ramified, field, &xi)?.inv()
                };
                let sign_flip_ok =
                    neg_value == RootOfUnity::from_sign(minus_one_q).mul(&value);
                let mut teichmuller_ok = true;
                for u in field.units() {
                    let scaled = chi_alpha_uniformizer(orbit, wild, &u)?;
                    let legendre = if field.log(&u).expect("unit") % 2 == 0 { 1 } else { -1 };
                    if scaled != RootOfUnity::from_sign(legendre).mul(&value) {
                        teichmuller_ok = false;
                        break;
                    }
                }
                let norm_depth_ok = value.mul(&value) == RootOfUnity::from_sign(minus_one_q);
                OrbitAxiomRecord {
                    orbit_representative: rep,
                    kind,
                    sign_flip_ok,
                    teichmuller_ok,
                    norm_depth_ok,
                }
            }
            OrbitKind::SymmetricUnramified => OrbitAxiomRecord {
                orbit_representative: rep,
                kind,
                // order two: chi_{-alpha} = chi^{-1} = chi, and the square
                // (the value at omega^2) is trivial, killing norms
                sign_flip_ok: value == value.inv(),
                teichmuller_ok: true,
                norm_depth_ok: value.mul(&value).is_one(),
            },
            OrbitKind::Asymmetric => OrbitAxiomRecord {
                orbit_representative: rep,
                kind,
                sign_flip_ok: value.is_one(),
                teichmuller_ok: true,
                norm_depth_ok: true,
            },
        };
        data.insert(rep, ChiDatum { kind, value_at_uniformizer: value, unit_restriction });
        report.push(record);
    }
    Ok(ChiDataFamily { data, report })
}
