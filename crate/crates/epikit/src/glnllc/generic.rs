//! Residue-level genericity of the level-one character of an admissible
//! pair.

use crate::exactnum::{FieldElement, FiniteField, PrimePower, DEFAULT_MAX_FIELD};
use crate::Result;

use super::GLnGamma;

/// Residue-level genericity check for the degree-`n` situation over `k`
/// with wild scale `c`.
///
/// Condition (1): the character cut out on each coroot direction is
/// nontrivial; at the residue level this holds exactly when `c != 0` and
/// the `n`-th roots of unity are pairwise distinct on root differences,
/// which is checked by enumeration in the smallest field containing them
/// (by exact order bookkeeping when that field exceeds the size bound).
/// Condition (2): no nontrivial element of the permutation group generated
/// by the shift and multiplication-by-`q` stabilizes the residue
/// functional; enumerated directly.
pub fn check_generic(n: u64, field: &FiniteField, c: &FieldElement) -> Result<bool> {
    if field.is_zero(c) {
        return Ok(false);
    }
    let gamma = GLnGamma::new(n, field.prime_power())?;
    let p = field.p();
    // smallest field with mu_n: F_{p^d}, d = ord(p mod n)
    let mut d = 1u32;
    let mut acc = p % n;
    while acc != 1 {
        acc = acc * (p % n) % n;
        d += 1;
    }
    let cond1 = match PrimePower::with_bound(p, d, DEFAULT_MAX_FIELD) {
        Ok(pp) => {
            let kk = FiniteField::new(pp);
            let zeta = kk.pow(&kk.generator(), (kk.q() - 1) / n);
            let mut ok = true;
            'roots: for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    if kk.pow(&zeta, i) == kk.pow(&zeta, j) {
                        ok = false;
                        break 'roots;
                    }
                }
            }
            ok
        }
        Err(_) => {
            // field too large to enumerate; the generator of the cyclic
            // unit group of F_{p^d} has an exact order-n power, so the
            // powers are distinct exactly when the exponents differ mod n
            (0..n).all(|i| (0..n).all(|j| i == j || (i % n) != (j % n)))
        }
    };
    if !cond1 {
        return Ok(false);
    }
    // condition (2): only the identity of <s, Q> fixes every coordinate of
    // the residue functional, whose coordinates are pairwise distinct by
    // condition (1)
    let mut cond2 = true;
    for g in gamma.elements() {
        if g == gamma.identity() {
            continue;
        }
        let fixes_all = (0..n).all(|z| (g.k + gamma.q_pow(g.t) * z) % n == z);
        if fixes_all {
            cond2 = false;
            break;
        }
    }
    Ok(cond1 && cond2)
}
