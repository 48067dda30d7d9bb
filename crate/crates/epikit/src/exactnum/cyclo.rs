//! Exact cyclotomic integers.
//!
//! Three representations, each canonical so equality is coefficient
//! equality:
//!
//! - [`CyclotomicInteger`]: `Z[zeta_p]` for prime `p` in the basis
//!   `zeta_p, zeta_p^2, ..., zeta_p^{p-1}` (so `1 = -(zeta + ... +
//!   zeta^{p-1})` and complex conjugation is the reindexing `j -> p-j`).
//!   This is where quadratic Gauss sums live.
//! - [`Cyclotomic`]: `Z[x]/Phi_n(x)` for arbitrary `n`, used to compare
//!   sums of roots of unity of mixed order exactly.
//! - [`CyclotomicTensor`]: `Z[zeta_p] (x) Z[zeta_m]` with `gcd(p, m) = 1`,
//!   a canonical model of `Z[zeta_{pm}]` in which Gauss sums for arbitrary
//!   multiplicative characters can be multiplied out in one sparse pass.

use alloc::vec;
use alloc::vec::Vec;

/// Element of `Z[zeta_p]`, `p` an odd prime, in the basis
/// `zeta_p^1 ... zeta_p^{p-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicInteger {
    p: u64,
    /// `coeffs[j-1]` is the coefficient of `zeta_p^j`.
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn zero(p: u64) -> Self {
        CyclotomicInteger { p, coeffs: vec![0; (p - 1) as usize] }
    }

    pub fn from_integer(p: u64, n: i64) -> Self {
        CyclotomicInteger { p, coeffs: vec![-n; (p - 1) as usize] }
    }

    pub fn zeta_pow(p: u64, j: u64) -> Self {
        let j = j % p;
        if j == 0 {
            return Self::from_integer(p, 1);
        }
        let mut coeffs = vec![0; (p - 1) as usize];
        coeffs[(j - 1) as usize] = 1;
        CyclotomicInteger { p, coeffs }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Accumulate `c * zeta^j` into `self`.
    pub fn add_monomial(&mut self, c: i64, j: u64) {
        let j = j % self.p;
        if j == 0 {
            for v in self.coeffs.iter_mut() {
                *v -= c;
            }
        } else {
            self.coeffs[(j - 1) as usize] += c;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicInteger { p: self.p, coeffs }
    }

    pub fn neg(&self) -> Self {
        CyclotomicInteger { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        CyclotomicInteger { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let p = self.p as usize;
        // exponent-group accumulator indexed by residues mod p
        let mut acc = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                acc[(i + 1 + j + 1) % p] += a * b;
            }
        }
        let k0 = acc[0];
        let coeffs = acc[1..].iter().map(|&c| c - k0).collect();
        CyclotomicInteger { p: self.p, coeffs }
    }

    /// Complex conjugation: `zeta^j -> zeta^{p-j}`.
    pub fn conj(&self) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = vec![0i64; n];
        for (idx, &c) in self.coeffs.iter().enumerate() {
            // exponent j = idx+1 maps to p - j, stored at index p-j-1 = n-1-idx
            coeffs[n - 1 - idx] = c;
        }
        CyclotomicInteger { p: self.p, coeffs }
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        let c = self.coeffs[0];
        if self.coeffs.iter().all(|&x| x == c) {
            Some(-c)
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            let theta =
                2.0 * core::f64::consts::PI * ((idx + 1) as f64) / (self.p as f64);
            re += c as f64 * libm::cos(theta);
            im += c as f64 * libm::sin(theta);
        }
        (re, im)
    }
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers (dense, little-endian coefficient vectors)
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Exact division by a monic divisor; panics if the division is not exact.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    let mut rem: Vec<i64> = num.to_vec();
    poly_trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.is_empty(), "inexact polynomial division");
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    while rem.len() > dd {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        quot[shift] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[shift + j] -= c * d;
        }
        poly_trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    quot
}

/// Remainder of `num` modulo a monic divisor, padded to `den.len() - 1`.
fn poly_rem_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem: Vec<i64> = num.to_vec();
    poly_trim(&mut rem);
    while rem.len() > dd {
        let c = *rem.last().unwrap();
        let shift = rem.len() - 1 - dd;
        for (j, &d) in den.iter().enumerate() {
            rem[shift + j] -= c * d;
        }
        poly_trim(&mut rem);
    }
    rem.resize(dd, 0);
    rem
}

/// The `n`-th cyclotomic polynomial, little-endian, monic of degree
/// `phi(n)`; computed by peeling divisors off `x^n - 1`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let mut cache: alloc::collections::BTreeMap<u64, Vec<i64>> = alloc::collections::BTreeMap::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut num = vec![0i64; d as usize + 1];
        num[0] = -1;
        num[d as usize] = 1;
        let mut phi = num;
        for (&e, phi_e) in cache.iter() {
            if d % e == 0 {
                phi = poly_div_exact(&phi, phi_e);
            }
        }
        cache.insert(d, phi);
    }
    cache.remove(&n).unwrap()
}

/// Element of `Z[x]/Phi_n(x)`, i.e. `Z[zeta_n]` in the power basis
/// `1, zeta, ..., zeta^{phi(n)-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    /// Build from a list of monomials `c * zeta_n^e`.
    pub fn from_monomials(n: u64, terms: &[(i64, u64)]) -> Self {
        let modulus = cyclotomic_polynomial(n);
        let mut raw = vec![0i64; n as usize];
        for &(c, e) in terms {
            raw[(e % n) as usize] += c;
        }
        Cyclotomic { n, coeffs: poly_rem_monic(&raw, &modulus) }
    }

    pub fn from_integer(n: u64, v: i64) -> Self {
        Self::from_monomials(n, &[(v, 0)])
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Element of `Z[zeta_p] (x) Z[zeta_m]` with `p` prime, `gcd(p, m) = 1`:
/// `p - 1` rows (the `zeta_p^1..zeta_p^{p-1}` basis), each a reduced
/// element of `Z[x]/Phi_m(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicTensor {
    p: u64,
    m: u64,
    phi_m: Vec<i64>,
    rows: Vec<Vec<i64>>,
}

impl CyclotomicTensor {
    /// Build from monomials `c * zeta_p^{pe} * zeta_m^{me}`.
    pub fn from_monomials(p: u64, m: u64, terms: &[(i64, u64, u64)]) -> Self {
        let mut raw = vec![vec![0i64; m as usize]; p as usize];
        for &(c, pe, me) in terms {
            raw[(pe % p) as usize][(me % m) as usize] += c;
        }
        Self::reduce_raw(p, m, raw)
    }

    pub fn from_integer(p: u64, m: u64, v: i64) -> Self {
        Self::from_monomials(p, m, &[(v, 0, 0)])
    }

    /// `(sum a_i) * (sum b_j)` multiplied termwise before reduction; this is
    /// the cheap path for Gauss-sum products, whose factors have only
    /// `q - 1` monomials each.
    pub fn product_of_monomial_sums(
        p: u64,
        m: u64,
        a: &[(i64, u64, u64)],
        b: &[(i64, u64, u64)],
    ) -> Self {
        let mut raw = vec![vec![0i64; m as usize]; p as usize];
        for &(ca, pa, ma) in a {
            if ca == 0 {
                continue;
            }
            for &(cb, pb, mb) in b {
                raw[((pa + pb) % p) as usize][((ma + mb) % m) as usize] += ca * cb;
            }
        }
        Self::reduce_raw(p, m, raw)
    }

    fn reduce_raw(p: u64, m: u64, mut raw: Vec<Vec<i64>>) -> Self {
        // zeta_p^0 = -(zeta_p + ... + zeta_p^{p-1})
        let row0 = raw[0].clone();
        for row in raw.iter_mut().skip(1) {
            for (v, r0) in row.iter_mut().zip(&row0) {
                *v -= r0;
            }
        }
        let phi_m = cyclotomic_polynomial(m);
        let rows = raw
            .into_iter()
            .skip(1)
            .map(|row| poly_rem_monic(&row, &phi_m))
            .collect();
        CyclotomicTensor { p, m, phi_m, rows }
    }

    fn monomial_expansion(&self) -> Vec<(i64, u64, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    out.push((c, i as u64 + 1, j as u64));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.p, self.m), (other.p, other.m));
        Self::product_of_monomial_sums(
            self.p,
            self.m,
            &self.monomial_expansion(),
            &other.monomial_expansion(),
        )
    }

    /// Complex conjugation `zeta -> zeta^{-1}` on both tensor factors.
    pub fn conj(&self) -> Self {
        let terms: Vec<(i64, u64, u64)> = self
            .monomial_expansion()
            .into_iter()
            .map(|(c, pe, me)| (c, (self.p - pe) % self.p, (self.m - me) % self.m))
            .collect();
        Self::from_monomials(self.p, self.m, &terms)
    }

    pub fn as_integer(&self) -> Option<i64> {
        // integer v has rows all equal to the constant -v
        let v = -self.rows[0][0];
        for row in &self.rows {
            if row[0] != -v || row[1..].iter().any(|&c| c != 0) {
                return None;
            }
        }
        let _ = &self.phi_m;
        Some(v)
    }

    /// Collapse to `Z[zeta_p]` when the `zeta_m`-direction is trivial.
    pub fn to_prime_cyclotomic(&self) -> Option<CyclotomicInteger> {
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            if row[1..].iter().any(|&c| c != 0) {
                return None;
            }
            coeffs.push(row[0]);
        }
        Some(CyclotomicInteger { p: self.p, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_basis_identities() {
        let p = 5;
        let one = CyclotomicInteger::from_integer(p, 1);
        // 1 + zeta + zeta^2 + zeta^3 + zeta^4 = 0
        let mut s = one.clone();
        for j in 1..p {
            s = s.add(&CyclotomicInteger::zeta_pow(p, j));
        }
        assert_eq!(s, CyclotomicInteger::zero(p));
        // zeta^2 * zeta^3 = 1
        let z2 = CyclotomicInteger::zeta_pow(p, 2);
        let z3 = CyclotomicInteger::zeta_pow(p, 3);
        assert_eq!(z2.mul(&z3), one);
        assert_eq!(z2.conj(), z3);
        assert_eq!(one.as_integer(), Some(1));
        assert_eq!(z2.as_integer(), None);
    }

    #[test]
    fn ring_axioms_hold_on_random_small_elements() {
        let p = 7;
        let elems: Vec<CyclotomicInteger> = (0..5)
            .map(|k| {
                let mut e = CyclotomicInteger::zero(p);
                for j in 0..p {
                    e.add_monomial(((k * 31 + j * 17) % 7) as i64 - 3, j);
                }
                e
            })
            .collect();
        for a in &elems {
            for b in &elems {
                assert_eq!(a.mul(b), b.mul(a));
                for c in &elems {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
            }
        }
    }

    #[test]
    fn conjugation_matches_numeric_evaluation() {
        let p = 11;
        let mut e = CyclotomicInteger::zero(p);
        for j in 0..p {
            e.add_monomial((j as i64 * j as i64) % 5 - 2, j);
        }
        let (re, im) = e.to_complex();
        let (cre, cim) = e.conj().to_complex();
        assert!((re - cre).abs() < 1e-9);
        assert!((im + cim).abs() < 1e-9);
    }

    #[test]
    fn cyclotomic_polynomials_pinned() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // degree phi(n) spot checks
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert_eq!(*cyclotomic_polynomial(105).last().unwrap(), 1);
    }

    #[test]
    fn general_cyclotomic_detects_hidden_rationals() {
        // zeta_3 + zeta_3^2 = -1 expressed at order 6
        let e = Cyclotomic::from_monomials(6, &[(1, 2), (1, 4), (1, 0)]);
        assert!(e.is_zero());
        // zeta_6 = 1 + zeta_6^2 - zeta_6^4 ... sanity: zeta_6^3 = -1
        let f = Cyclotomic::from_monomials(6, &[(1, 3), (1, 0)]);
        assert!(f.is_zero());
    }

    #[test]
    fn tensor_half_orders_match_prime_side() {
        // In Z[zeta_5] (x) Z[zeta_4]: zeta_4^2 = -1
        let a = CyclotomicTensor::from_monomials(5, 4, &[(1, 0, 2), (1, 0, 0)]);
        assert_eq!(a, CyclotomicTensor::from_integer(5, 4, 0));
        // zeta_5 * zeta_5^4 = 1
        let b = CyclotomicTensor::product_of_monomial_sums(5, 4, &[(1, 1, 0)], &[(1, 4, 0)]);
        assert_eq!(b.as_integer(), Some(1));
        assert_eq!(
            b.to_prime_cyclotomic().unwrap(),
            CyclotomicInteger::from_integer(5, 1)
        );
    }

    #[test]
    fn tensor_mul_agrees_with_sparse_product() {
        let a = CyclotomicTensor::from_monomials(3, 8, &[(1, 1, 3), (-2, 2, 5), (1, 0, 1)]);
        let b = CyclotomicTensor::from_monomials(3, 8, &[(3, 2, 7), (1, 1, 0)]);
        let ab = a.mul(&b);
        let direct = CyclotomicTensor::product_of_monomial_sums(
            3,
            8,
            &[(1, 1, 3), (-2, 2, 5), (1, 0, 1)],
            &[(3, 2, 7), (1, 1, 0)],
        );
        assert_eq!(ab, direct);
        assert_eq!(a.conj().conj(), a);
    }
}
