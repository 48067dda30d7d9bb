//! The character `chi_S * xi^{-1}` by closed form and by assembly from
//! Langlands-Shelstad factors, the lambda tower for the even-degree case,
//! the rectifying character, and the end-to-end identity
//! `chi_S = xi * mu_xi`.

use alloc::format;

use crate::chidata::{ChiDatum, OrbitKind, UnitRestriction};
use crate::exactnum::{
    lambda_quadratic, minus_one_symbol, AdditiveCharacter, ExtensionKind, FieldElement,
    FiniteField, RootOfUnity,
};
use crate::{Error, Result};

use super::lsfactors::{r_pxa_value, s_bp_value, WeilToken};
use super::orbits::{dagger_orbits, sgn_q_mod_n};
use super::{AdmissiblePairData, GammaElement, TruncatedEChar};

/// The chi-data character attached to the singleton orbit by an admissible
/// pair. The wild restriction of the pair pulls back through
/// `x -> x * x^{-tau}`, which doubles the residue scale, so the effective
/// additive character has scale `2c`.
pub fn singleton_chi(pair: &AdmissiblePairData) -> Result<Option<ChiDatum>> {
    if pair.n() % 2 != 0 {
        return Ok(None);
    }
    let field = pair.field();
    let two_c = field.mul(&field.from_u64(2), pair.wild_scale());
    let psi = AdditiveCharacter::new(field, two_c);
    let value = lambda_quadratic(ExtensionKind::Ramified, field, &psi)?.inv();
    Ok(Some(ChiDatum {
        kind: OrbitKind::SymmetricRamified,
        value_at_uniformizer: value,
        unit_restriction: UnitRestriction::LegendreOnTeichmuller,
    }))
}

/// The two computations of `chi_S * xi^{-1}` and their comparison.
#[derive(Debug, Clone)]
pub struct ChiSOverXi {
    pub closed: TruncatedEChar,
    pub assembled: TruncatedEChar,
    pub agree: bool,
}

/// `chi_S * xi^{-1}` as a character of the truncated `E^x`.
///
/// Closed form: `sgn(q, Z/nZ)^{v_E}` times, for even `n`, the inverse of
/// the singleton chi-data character. Assembled form: the product over the
/// representative set of the `chi_0`-pairings of the gauge and chi-data
/// factors, inverted, evaluated on the three generators of the truncated
/// `E^x`.
pub fn chi_s_over_xi(pair: &AdmissiblePairData) -> Result<ChiSOverXi> {
    let gamma = pair.gamma();
    let field = pair.field();
    let n = pair.n();
    let q = field.q();
    let sgn = sgn_q_mod_n(n, q)?.sign;
    let chi = singleton_chi(pair)?;

    // closed form
    let closed = if n % 2 == 1 {
        TruncatedEChar {
            omega: RootOfUnity::from_sign(sgn),
            tame_exponent: 0,
            wild_scale: field.zero(),
        }
    } else {
        let chi = chi.as_ref().expect("even n has the singleton datum");
        TruncatedEChar {
            omega: RootOfUnity::from_sign(sgn).mul(&chi.value_at_uniformizer.inv()),
            // the inverse of the Legendre symbol is itself
            tame_exponent: (q - 1) / 2,
            wild_scale: field.zero(),
        }
    };

    // assembled form: evaluate the factor product on each generator
    let (_, xi_set) = dagger_orbits(gamma);
    let eval = |token: &WeilToken, sigma: GammaElement| -> Result<RootOfUnity> {
        let mut acc = RootOfUnity::one();
        for &a in &xi_set {
            let sbp = s_bp_value(gamma, a, sigma)?;
            let rp = r_pxa_value(gamma, field, a, token, chi.as_ref())?;
            acc = acc.mul(&sbp.chi0.mul(&rp.chi0).inv());
        }
        Ok(acc)
    };
    let omega = eval(&WeilToken::Uniformizer, gamma.q_gen())?;
    let tame_value = eval(&WeilToken::TeichUnit(field.generator()), gamma.identity())?;
    let tame_exponent = match tame_value.as_sign() {
        Some(1) => 0,
        Some(-1) => (q - 1) / 2,
        _ => {
            return Err(Error::BadParameters(format!(
                "assembled unit value {tame_value} is not a sign"
            )))
        }
    };
    let wild_value = eval(&WeilToken::WildUnit, gamma.identity())?;
    if !wild_value.is_one() {
        return Err(Error::BadParameters(format!(
            "assembled wild value {wild_value} should be trivial (tame factors only)"
        )));
    }
    let assembled =
        TruncatedEChar { omega, tame_exponent, wild_scale: field.zero() };
    let agree = closed == assembled;
    Ok(ChiSOverXi { closed, assembled, agree })
}

/// The lambda tower for even degree: both proof branches and their common
/// value.
#[derive(Debug, Clone)]
pub struct LambdaTowerReport {
    /// `sgn(q, Z/nZ)`.
    pub sign_branch: i32,
    /// `(-1/q)^{n/2 - 1}`.
    pub symbol_branch: i32,
    /// The ramified quadratic lambda constant at the given scale.
    pub lambda_sub: RootOfUnity,
    /// `sign_branch * lambda_sub`.
    pub value: RootOfUnity,
    pub branches_agree: bool,
}

/// `lambda_{E/F}` for a totally ramified tower of even degree `n`:
/// `sgn(q, Z/nZ) * lambda_{E/E_2}`, with the second proof branch
/// `(-1/q)^{n/2-1} * lambda_{E/E_2}` computed alongside. `psi_scale` is the
/// residue scale of the additive character at the quadratic subextension
/// level.
pub fn lambda_tower(
    n: u64,
    field: &FiniteField,
    psi_scale: &FieldElement,
) -> Result<LambdaTowerReport> {
    if n % 2 != 0 {
        return Err(Error::BadParameters(format!("lambda tower needs even n, got {n}")));
    }
    let sign_branch = sgn_q_mod_n(n, field.q())?.sign;
    let symbol_branch = if (n / 2 - 1) % 2 == 0 { 1 } else { minus_one_symbol(field.q()) };
    let lambda_sub = lambda_quadratic(
        ExtensionKind::Ramified,
        field,
        &AdditiveCharacter::new(field, psi_scale.clone()),
    )?;
    let value = RootOfUnity::from_sign(sign_branch).mul(&lambda_sub);
    Ok(LambdaTowerReport {
        sign_branch,
        symbol_branch,
        lambda_sub,
        value,
        branches_agree: sign_branch == symbol_branch,
    })
}

/// The rectifying character value at the fixed uniformizer.
///
/// Odd degree: `sgn(q, Z/nZ)`. Even degree: the Legendre symbol of
/// `zeta(omega, xi) = c / n` times the lambda tower value, where the tower
/// is evaluated at the scale `n/2` forced by the residue normalization
/// `psi_E(x) = psi_F(n x)` with the default level-zero `psi_F` of scale 1.
pub fn rectifier_value(pair: &AdmissiblePairData) -> Result<RootOfUnity> {
    let field = pair.field();
    let n = pair.n();
    if n % 2 == 1 {
        return Ok(RootOfUnity::from_sign(sgn_q_mod_n(n, field.q())?.sign));
    }
    let n_in_k = field.from_u64(n % field.p());
    let n_inv = field.inverse(&n_in_k).expect("p does not divide n");
    let zeta = field.mul(pair.wild_scale(), &n_inv);
    let legendre = if field.log(&zeta).expect("zeta is a unit") % 2 == 0 { 1 } else { -1 };
    let tower = lambda_tower(n, field, &field.from_u64((n / 2) % field.p()))?;
    Ok(RootOfUnity::from_sign(legendre).mul(&tower.value))
}

/// The rectifying character as a character of the truncated `E^x`:
/// unramified for odd degree, Legendre on Teichmueller units for even
/// degree, always trivial at depth one.
pub fn rectifier_char(pair: &AdmissiblePairData) -> Result<TruncatedEChar> {
    let field = pair.field();
    let omega = rectifier_value(pair)?;
    let tame_exponent = if pair.n() % 2 == 0 { (field.q() - 1) / 2 } else { 0 };
    Ok(TruncatedEChar { omega, tame_exponent, wild_scale: field.zero() })
}

/// Outcome of the end-to-end identity `chi_S = xi * mu_xi`.
#[derive(Debug, Clone)]
pub struct RectiReport {
    pub chi_s: TruncatedEChar,
    pub xi_mu: TruncatedEChar,
    pub chi_over_xi: ChiSOverXi,
    pub verdict: bool,
}

/// Verify `chi_S = xi * mu_xi` for an admissible pair: `chi_S` is computed
/// as `xi` times the closed form of `chi_S * xi^{-1}` (with the assembled
/// form required to agree), and `xi * mu_xi` independently through the
/// rectifying character.
pub fn verify_recti(pair: &AdmissiblePairData) -> Result<RectiReport> {
    let field = pair.field();
    let chi_over_xi = chi_s_over_xi(pair)?;
    let xi = pair.xi();
    let chi_s = xi.mul(&chi_over_xi.closed, field);
    let xi_mu = xi.mul(&rectifier_char(pair)?, field);
    let verdict = chi_over_xi.agree && chi_s == xi_mu;
    Ok(RectiReport { chi_s, xi_mu, chi_over_xi, verdict })
}
