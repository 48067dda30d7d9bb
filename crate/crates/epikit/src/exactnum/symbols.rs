//! Jacobi and Legendre symbols.

use crate::{Error, Result};

use super::field::FiniteField;

/// Jacobi symbol `(a/n)` for odd positive `n`.
///
/// Multiplicative in `a`, zero exactly when `gcd(a, n) > 1`, and for prime
/// `n` this is the Legendre symbol.
pub fn jacobi(a: i64, n: i64) -> Result<i32> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadJacobiModulus(n));
    }
    let mut num = a.rem_euclid(n) as u64;
    let mut den = n as u64;
    let mut acc = 1i32;
    loop {
        num %= den;
        if num == 0 {
            return Ok(if den == 1 { acc } else { 0 });
        }
        while num % 2 == 0 {
            num /= 2;
            if den % 8 == 3 || den % 8 == 5 {
                acc = -acc;
            }
        }
        // both odd now: quadratic reciprocity
        if num % 4 == 3 && den % 4 == 3 {
            acc = -acc;
        }
        core::mem::swap(&mut num, &mut den);
    }
}

/// Legendre symbol on `F_q` applied to the image of the integer `a`,
/// evaluated through the quadratic multiplicative character (discrete-log
/// parity). Agrees with `jacobi(a, p)^f` for `q = p^f`.
pub fn quadratic_symbol(a: i64, field: &FiniteField) -> i32 {
    let x = field.from_i64(a);
    match field.log(&x) {
        None => 0,
        Some(t) => {
            if t % 2 == 0 {
                1
            } else {
                -1
            }
        }
    }
}

/// `(-1/q)`: plus one exactly when `q = 1 mod 4`.
pub fn minus_one_symbol(q: u64) -> i32 {
    if q % 4 == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::FiniteField;

    /// Independent oracle: Euler's criterion `a^{(p-1)/2} mod p` for prime p.
    fn euler_criterion(a: i64, p: u64) -> i32 {
        let mut acc = 1u64;
        let mut base = a.rem_euclid(p as i64) as u64;
        if base == 0 {
            return 0;
        }
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        if acc == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn pinned_values() {
        assert_eq!(jacobi(2, 7).unwrap(), 1); // 2^3 = 1 mod 7
        assert_eq!(jacobi(0, 5).unwrap(), 0);
        assert_eq!(jacobi(-1, 3).unwrap(), -1);
        assert_eq!(jacobi(2, 45).unwrap(), -1);
        assert_eq!(jacobi(1001, 9907).unwrap(), -1);
        assert!(jacobi(2, 4).is_err());
        assert!(jacobi(2, -3).is_err());
    }

    #[test]
    fn matches_euler_criterion_on_primes() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for a in -10i64..20 {
                assert_eq!(jacobi(a, p as i64).unwrap(), euler_criterion(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn multiplicativity() {
        for n in [9i64, 15, 21, 45, 77] {
            for a in 1i64..20 {
                for b in 1i64..20 {
                    let lhs = jacobi(a * b, n).unwrap();
                    let rhs = jacobi(a, n).unwrap() * jacobi(b, n).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn field_symbol_agrees_with_jacobi_power() {
        for (p, f) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2)] {
            let k = FiniteField::build(p, f).unwrap();
            for a in -5i64..10 {
                let expect = {
                    let j = jacobi(a, p as i64).unwrap();
                    if f % 2 == 0 {
                        j * j
                    } else {
                        j
                    }
                };
                assert_eq!(quadratic_symbol(a, &k), expect, "a={a}, q={}", k.q());
            }
        }
    }

    #[test]
    fn minus_one_rule() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49] {
            assert_eq!(minus_one_symbol(q), if q % 4 == 1 { 1 } else { -1 });
        }
    }
}
