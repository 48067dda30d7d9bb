//! Exact roots of unity as reduced `(order, exponent)` pairs.

use core::fmt;

/// The value `exp(2*pi*i * exponent / order)`, kept in lowest terms so that
/// equality is literal equality: `(k mod N)` and `(ck mod cN)` reduce to the
/// same pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    order: u64,
    exponent: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: u64) -> Self {
        assert!(order > 0, "order must be positive");
        let e = exponent % order;
        if e == 0 {
            return RootOfUnity { order: 1, exponent: 0 };
        }
        let g = gcd(e, order);
        RootOfUnity { order: order / g, exponent: e / g }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { order: 2, exponent: 1 }
    }

    pub fn i() -> Self {
        RootOfUnity { order: 4, exponent: 1 }
    }

    pub fn from_sign(s: i32) -> Self {
        match s {
            1 => Self::one(),
            -1 => Self::minus_one(),
            _ => panic!("sign must be +-1, got {s}"),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let n = lcm(self.order, other.order);
        let e = (self.exponent * (n / self.order) + other.exponent * (n / other.order)) % n;
        RootOfUnity::new(n, e)
    }

    pub fn inv(&self) -> RootOfUnity {
        RootOfUnity::new(self.order, self.order - self.exponent)
    }

    /// Complex conjugate; same as the inverse on the unit circle.
    pub fn conj(&self) -> RootOfUnity {
        self.inv()
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let e = (self.exponent as i128 * k as i128).rem_euclid(self.order as i128) as u64;
        RootOfUnity::new(self.order, e)
    }

    /// `Some(+-1)` when the value is real, `None` otherwise.
    pub fn as_sign(&self) -> Option<i32> {
        match (self.order, self.exponent) {
            (1, 0) => Some(1),
            (2, 1) => Some(-1),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let theta = 2.0 * core::f64::consts::PI * (self.exponent as f64) / (self.order as f64);
        (libm::cos(theta), libm::sin(theta))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exponent) {
            (1, 0) => write!(f, "1"),
            (2, 1) => write!(f, "-1"),
            (4, 1) => write!(f, "i"),
            (4, 3) => write!(f, "-i"),
            (n, e) => write!(f, "zeta_{n}^{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescaling_is_invisible() {
        assert_eq!(RootOfUnity::new(6, 2), RootOfUnity::new(3, 1));
        assert_eq!(RootOfUnity::new(12, 4), RootOfUnity::new(3, 1));
        assert_eq!(RootOfUnity::new(10, 0), RootOfUnity::one());
    }

    #[test]
    fn product_is_exponent_addition_after_rescaling() {
        let a = RootOfUnity::new(4, 1);
        let b = RootOfUnity::new(6, 1);
        let c = a.mul(&b); // exp(2 pi i (3 + 2)/12)
        assert_eq!(c, RootOfUnity::new(12, 5));
        assert_eq!(a.mul(&a), RootOfUnity::minus_one());
        assert_eq!(a.mul(&a.inv()), RootOfUnity::one());
    }

    #[test]
    fn associativity_over_mixed_orders() {
        let xs = [
            RootOfUnity::new(3, 1),
            RootOfUnity::new(4, 3),
            RootOfUnity::new(5, 2),
            RootOfUnity::new(8, 5),
        ];
        for a in xs {
            for b in xs {
                for c in xs {
                    assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                }
            }
        }
    }

    #[test]
    fn powers_and_signs() {
        assert_eq!(RootOfUnity::i().pow(2), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::i().pow(-1), RootOfUnity::new(4, 3));
        assert_eq!(RootOfUnity::minus_one().as_sign(), Some(-1));
        assert_eq!(RootOfUnity::i().as_sign(), None);
    }
}
