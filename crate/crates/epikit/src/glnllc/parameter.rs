//! A finite monomial-matrix model of the parameter attached to an
//! admissible pair, compared against the induced model of its character.
//!
//! The Weil-group data that the parameter sees factors through a finite
//! split model `W = k_K x| (Z/N_t x| Z/D)`: a wild coordinate in the
//! residue field `k_K` of the frame's splitting field, a tame-inertia
//! coordinate modulo `N_t = n (q^f - 1)`, and an unramified degree modulo
//! `D`. Two matrix-valued evaluations are compared on this model:
//!
//! - the induced model, evaluated elementwise through coset algebra and
//!   the transfer maps (trace on the wild coordinate, exponent reduction
//!   on the tame coordinate, degree on Frobenius), and
//! - the parameter as a product of its three generator matrices along the
//!   canonical decomposition `wild * tame^m * Frobenius^d`.
//!
//! Exact trace agreement over the generated group is the verdict; on the
//! way we also confirm that stripping the permutation part of the model
//! recovers the character on the subgroup fixing the zero coset.

use alloc::format;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::exactnum::{Cyclotomic, FieldElement, FiniteField, PrimePower, RootOfUnity};
use crate::rootgalois::TorusMonomialElement;
use crate::{Error, Result};

use super::AdmissiblePairData;

const EXHAUSTIVE_CAP: u128 = 10_000;
const SAMPLE_SIZE: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ModelElement {
    /// Encoding of the wild coordinate in `k_K`.
    w: u64,
    /// Tame-inertia coordinate mod `N_t`.
    m: u64,
    /// Unramified degree mod `D`.
    d: u64,
}

struct WeilModel {
    n: u64,
    kk: FiniteField,
    q: u64,
    nt: u64,
    d_mod: u64,
    zeta: FieldElement,
    c_hat: FieldElement,
    xi_omega: RootOfUnity,
    tame_exponent: u64,
}

fn modpow(base: u64, mut e: u64, modulus: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % modulus as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % modulus as u128;
        }
        b = b * b % modulus as u128;
        e >>= 1;
    }
    acc as u64
}

impl WeilModel {
    fn new(pair: &AdmissiblePairData) -> Result<Self> {
        let field = pair.field();
        let n = pair.n();
        let q = field.q();
        let f = pair.gamma().f();
        let kk = if f == 1 {
            field.clone()
        } else {
            FiniteField::new(PrimePower::with_bound(
                field.p(),
                field.degree() * f,
                crate::exactnum::DEFAULT_MAX_FIELD,
            )?)
        };
        let qf = kk.q();
        let nt = n * (qf - 1);
        // order of q modulo nt
        let mut ord_q = 1u64;
        let mut acc = q % nt;
        while acc != 1 {
            acc = acc as u128 as u64;
            acc = (acc as u128 * (q % nt) as u128 % nt as u128) as u64;
            ord_q += 1;
            if ord_q > nt {
                return Err(Error::BadParameters(format!(
                    "q = {q} not invertible mod {nt}"
                )));
            }
        }
        let d_mod = lcm(lcm(f as u64, ord_q), pair.omega_value().order());
        let zeta = kk.pow(&kk.generator(), (qf - 1) / n);
        let c_hat = embed(field, &kk, pair.wild_scale())?;
        Ok(WeilModel {
            n,
            kk,
            q,
            nt,
            d_mod,
            zeta,
            c_hat,
            xi_omega: pair.omega_value(),
            tame_exponent: pair.tame_exponent(),
        })
    }

    fn group_order(&self) -> u128 {
        self.kk.q() as u128 * self.nt as u128 * self.d_mod as u128
    }

    fn identity(&self) -> ModelElement {
        ModelElement { w: 0, m: 0, d: 0 }
    }

    /// `zeta^{m mod n} * Frob^d` applied to the wild coordinate.
    fn act(&self, m: u64, d: u64, w: &FieldElement) -> FieldElement {
        let mut out = w.clone();
        for _ in 0..(d % self.kk_f() as u64) {
            out = self.kk.pow(&out, self.q);
        }
        self.kk.mul(&self.kk.pow(&self.zeta, m % self.n), &out)
    }

    /// Number of `q`-power Frobenius steps before `k_K` repeats.
    fn kk_f(&self) -> u32 {
        let mut r = 0u32;
        let mut t = 1u64;
        while t != self.kk.q() {
            t *= self.q;
            r += 1;
        }
        r.max(1)
    }

    fn mul(&self, a: ModelElement, b: ModelElement) -> ModelElement {
        let wa = self.kk.decode(a.w);
        let wb = self.kk.decode(b.w);
        let w = self.kk.add(&wa, &self.act(a.m, a.d, &wb));
        let m = (a.m as u128 + modpow(self.q, a.d, self.nt) as u128 * b.m as u128)
            % self.nt as u128;
        ModelElement {
            w: w.encode(self.kk.p()),
            m: m as u64,
            d: (a.d + b.d) % self.d_mod,
        }
    }

    fn inv(&self, a: ModelElement) -> ModelElement {
        let d = (self.d_mod - a.d % self.d_mod) % self.d_mod;
        let m = (self.nt - (modpow(self.q, d, self.nt) as u128 * a.m as u128 % self.nt as u128) as u64)
            % self.nt;
        let w = self.kk.neg(&self.act(m, d, &self.kk.decode(a.w)));
        ModelElement { w: w.encode(self.kk.p()), m, d }
    }

    /// Evaluate the pair's character on an element of the subgroup fixing
    /// the zero coset (`m = 0 mod n`), through the transfer maps.
    fn xi_eval(&self, h: ModelElement) -> Result<RootOfUnity> {
        if h.m % self.n != 0 {
            return Err(Error::BadParameters(format!(
                "element with tame coordinate {} is outside the index-n subgroup",
                h.m
            )));
        }
        let qf1 = self.kk.q() - 1;
        let m1 = (h.m / self.n) % qf1;
        let q1 = self.q - 1;
        // tame transfer: exponent reduction to Z/(q-1)
        let tame = RootOfUnity::new(q1, self.tame_exponent * (m1 % q1) % q1);
        // wild transfer: trace to the base residue field is built into the
        // absolute trace against the embedded scale
        let w = self.kk.decode(h.w);
        let wild = RootOfUnity::new(self.kk.p(), self.kk.trace(&self.kk.mul(&self.c_hat, &w)));
        Ok(self.xi_omega.pow(h.d as i64).mul(&tame).mul(&wild))
    }

    /// The induced model evaluated directly at `x` through coset algebra.
    fn induced_matrix(&self, x: ModelElement) -> Result<TorusMonomialElement> {
        let n = self.n as usize;
        let mut perm = alloc::vec![0usize; n];
        let mut diag = alloc::vec![RootOfUnity::one(); n];
        for i in 0..n {
            let r_i = ModelElement { w: 0, m: i as u64, d: 0 };
            let z = self.mul(x, r_i);
            let j = (z.m % self.n) as usize;
            let r_j_inv = self.inv(ModelElement { w: 0, m: j as u64, d: 0 });
            let h = self.mul(r_j_inv, z);
            perm[i] = j;
            diag[j] = self.xi_eval(h)?;
        }
        Ok(TorusMonomialElement::new(perm, diag))
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Embed `x` from the base residue field into the splitting residue field
/// by sending the polynomial generator to the least root of the defining
/// polynomial.
fn embed(k: &FiniteField, kk: &FiniteField, x: &FieldElement) -> Result<FieldElement> {
    if k.q() == kk.q() {
        return Ok(x.clone());
    }
    // find a root of k's defining polynomial in kk
    let mut root = None;
    'search: for cand_code in 0..kk.q() {
        let cand = kk.decode(cand_code);
        // evaluate x^{f0} + sum c_i x^i at cand
        let mut value = kk.pow(&cand, k.degree() as u64);
        let mut power = kk.one();
        for &coeff in k.modulus() {
            value = kk.add(&value, &kk.mul(&kk.from_u64(coeff), &power));
            power = kk.mul(&power, &cand);
        }
        if kk.is_zero(&value) {
            root = Some(cand);
            break 'search;
        }
    }
    let root = root.ok_or_else(|| {
        Error::BadParameters(format!(
            "no embedding of F_{} into F_{}",
            k.q(),
            kk.q()
        ))
    })?;
    let mut acc = kk.zero();
    let mut power = kk.one();
    for &coeff in x.coeffs() {
        acc = kk.add(&acc, &kk.mul(&kk.from_u64(coeff), &power));
        power = kk.mul(&power, &root);
    }
    Ok(acc)
}

/// Exact equality of two sums of roots of unity.
fn trace_sums_equal(a: &[RootOfUnity], b: &[RootOfUnity]) -> bool {
    let mut level = 1u64;
    for r in a.iter().chain(b) {
        level = lcm(level, r.order());
    }
    let to_terms = |xs: &[RootOfUnity]| -> Vec<(i64, u64)> {
        xs.iter().map(|r| (1i64, r.exponent() * (level / r.order()))).collect()
    };
    Cyclotomic::from_monomials(level, &to_terms(a))
        == Cyclotomic::from_monomials(level, &to_terms(b))
}

/// Outcome of the model comparison.
#[derive(Debug, Clone)]
pub struct ParameterModelReport {
    pub group_order: u128,
    pub exhaustive: bool,
    pub checked: usize,
    pub traces_agree: bool,
    /// Stripping the permutation part recovers the character on the
    /// zero-coset subgroup.
    pub shapiro_ok: bool,
    pub dimension: usize,
}

impl ParameterModelReport {
    pub fn ok(&self) -> bool {
        self.traces_agree && self.shapiro_ok
    }
}

/// Build the parameter's generator matrices and the induced model of the
/// pair's character on the finite Weil model, and compare their traces:
/// exhaustively when the model group has at most `10^4` elements, on a
/// seeded 100-element sample otherwise.
pub fn parameter_model(pair: &AdmissiblePairData, seed: u64) -> Result<ParameterModelReport> {
    let model = WeilModel::new(pair)?;
    let n = model.n as usize;

    // generator matrices of the parameter
    let tame_gen = model.induced_matrix(ModelElement { w: 0, m: 1, d: 0 })?;
    let frob_gen = model.induced_matrix(ModelElement { w: 0, m: 0, d: 1 })?;

    let phi_word = |g: ModelElement| -> Result<TorusMonomialElement> {
        // wild * tame^m * Frobenius^d
        let wild = model.induced_matrix(ModelElement { w: g.w, m: 0, d: 0 })?;
        let mut acc = wild;
        acc = acc.mul(&monomial_pow(&tame_gen, g.m));
        acc = acc.mul(&monomial_pow(&frob_gen, g.d));
        Ok(acc)
    };

    let order = model.group_order();
    let exhaustive = order <= EXHAUSTIVE_CAP;
    let elements: Vec<ModelElement> = if exhaustive {
        let mut v = Vec::with_capacity(order as usize);
        for w in 0..model.kk.q() {
            for m in 0..model.nt {
                for d in 0..model.d_mod {
                    v.push(ModelElement { w, m, d });
                }
            }
        }
        v
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLE_SIZE)
            .map(|_| ModelElement {
                w: rng.next_u64() % model.kk.q(),
                m: rng.next_u64() % model.nt,
                d: rng.next_u64() % model.d_mod,
            })
            .collect()
    };

    let mut traces_agree = true;
    let mut shapiro_ok = true;
    for &g in &elements {
        let direct = model.induced_matrix(g)?;
        let word = phi_word(g)?;
        if !trace_sums_equal(&direct.trace_terms(), &word.trace_terms()) {
            traces_agree = false;
            break;
        }
        if g.m % model.n == 0 {
            // chi_0 of the strip-twisted diagonal recovers the character
            let strip_twist = direct.mul(&direct.strip().inv());
            if strip_twist.diag()[0] != model.xi_eval(g)? {
                shapiro_ok = false;
                break;
            }
        }
    }

    let dimension = model.induced_matrix(model.identity())?.trace_terms().len();
    debug_assert_eq!(dimension, n);
    Ok(ParameterModelReport {
        group_order: order,
        exhaustive,
        checked: elements.len(),
        traces_agree,
        shapiro_ok,
        dimension,
    })
}

fn monomial_pow(base: &TorusMonomialElement, mut e: u64) -> TorusMonomialElement {
    let mut acc = TorusMonomialElement::identity(base.dim());
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    acc
}
