//! Orbits of multiplication by `q` on `Z/nZ - {0}` and the permutation
//! sign of multiplication by `q` on `Z/nZ`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::exactnum::jacobi;
use crate::{Error, Result};

use super::GLnGamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaggerOrbitType {
    Asymmetric,
    SymmetricNonsingleton,
    SymmetricSingleton,
}

/// One `<Q>`-orbit on `Z/nZ - {0}` with its symmetry type.
#[derive(Debug, Clone)]
pub struct DaggerOrbit {
    /// Least member.
    pub representative: u64,
    /// Members ascending.
    pub members: Vec<u64>,
    pub orbit_type: DaggerOrbitType,
    /// For an asymmetric orbit, the size (stabilizer exponent of a point);
    /// for a symmetric non-singleton orbit, half the size (stabilizer
    /// exponent of the pair); `1` for the singleton.
    pub m: u64,
}

/// All `<Q>`-orbits on `Z/nZ - {0}` plus the set `Xi` of least
/// representatives of the `<Q> x <+-1>`-classes.
pub fn dagger_orbits(gamma: &GLnGamma) -> (Vec<DaggerOrbit>, Vec<u64>) {
    let n = gamma.n();
    let q = gamma.q() % n;
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for start in 1..n {
        if seen.contains(&start) {
            continue;
        }
        let mut members = BTreeSet::new();
        let mut x = start;
        loop {
            if !members.insert(x) {
                break;
            }
            x = x * q % n;
        }
        seen.extend(members.iter().copied());
        let members: Vec<u64> = members.into_iter().collect();
        let symmetric = members.iter().all(|&a| members.binary_search(&((n - a) % n)).is_ok());
        let orbit_type = if !symmetric {
            DaggerOrbitType::Asymmetric
        } else if members.len() == 1 {
            DaggerOrbitType::SymmetricSingleton
        } else {
            DaggerOrbitType::SymmetricNonsingleton
        };
        let m = match orbit_type {
            DaggerOrbitType::Asymmetric => members.len() as u64,
            DaggerOrbitType::SymmetricNonsingleton => (members.len() / 2) as u64,
            DaggerOrbitType::SymmetricSingleton => 1,
        };
        orbits.push(DaggerOrbit {
            representative: members[0],
            members,
            orbit_type,
            m,
        });
    }
    // Xi: least representative per <Q> x <+-1>-class
    let mut xi = Vec::new();
    let mut covered: BTreeSet<u64> = BTreeSet::new();
    for orbit in &orbits {
        if covered.contains(&orbit.representative) {
            continue;
        }
        xi.push(orbit.representative);
        covered.extend(orbit.members.iter().copied());
        covered.extend(orbit.members.iter().map(|&a| (n - a) % n));
    }
    xi.sort_unstable();
    (orbits, xi)
}

/// Find the orbit containing `a`.
pub fn orbit_containing(orbits: &[DaggerOrbit], a: u64) -> Option<&DaggerOrbit> {
    orbits.iter().find(|o| o.members.binary_search(&a).is_ok())
}

/// Cross-checked permutation sign of multiplication by `q` on `Z/nZ`.
#[derive(Debug, Clone)]
pub struct SgnReport {
    pub sign: i32,
    /// Parity of the count of even-size symmetric orbits on the dagger set.
    pub orbit_census_sign: i32,
    /// Jacobi symbol `(q/n)`, defined for odd `n`.
    pub jacobi_sign: Option<i32>,
}

/// `sgn(q, Z/nZ)`: the sign of the permutation that multiplication by `q`
/// induces on `Z/nZ`, cross-checked against the symmetric-orbit census and
/// (for odd `n`) against the Jacobi symbol.
pub fn sgn_q_mod_n(n: u64, q: u64) -> Result<SgnReport> {
    if n == 0 || gcd(q, n) != 1 {
        return Err(Error::BadParameters(alloc::format!(
            "need gcd(q, n) = 1, got q={q}, n={n}"
        )));
    }
    // cycle decomposition parity
    let mut visited = alloc::vec![false; n as usize];
    let mut sign = 1i32;
    for start in 0..n {
        if visited[start as usize] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !visited[x as usize] {
            visited[x as usize] = true;
            x = x * (q % n) % n;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    // census: even-size symmetric <Q>-orbits on the dagger set
    let mut census = 0u64;
    {
        let mut seen = BTreeSet::new();
        for start in 1..n {
            if seen.contains(&start) {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut x = start;
            while members.insert(x) {
                x = x * (q % n) % n;
            }
            let symmetric =
                members.iter().all(|&a| members.contains(&((n - a) % n)));
            if symmetric && members.len() % 2 == 0 {
                census += 1;
            }
            seen.extend(members);
        }
    }
    let orbit_census_sign = if census % 2 == 0 { 1 } else { -1 };
    let jacobi_sign = if n % 2 == 1 {
        Some(jacobi(q as i64, n as i64)?)
    } else {
        None
    };
    Ok(SgnReport { sign, orbit_census_sign, jacobi_sign })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::PrimePower;

    fn gamma(n: u64, q: u64) -> GLnGamma {
        GLnGamma::new(n, PrimePower::from_cardinality(q).unwrap()).unwrap()
    }

    #[test]
    fn dagger_orbits_n4_q3() {
        let (orbits, xi) = dagger_orbits(&gamma(4, 3));
        assert_eq!(orbits.len(), 2);
        let o13 = orbit_containing(&orbits, 1).unwrap();
        assert_eq!(o13.members, alloc::vec![1, 3]);
        assert_eq!(o13.orbit_type, DaggerOrbitType::SymmetricNonsingleton);
        assert_eq!(o13.m, 1);
        let o2 = orbit_containing(&orbits, 2).unwrap();
        assert_eq!(o2.orbit_type, DaggerOrbitType::SymmetricSingleton);
        assert_eq!(xi, alloc::vec![1, 2]);
    }

    #[test]
    fn dagger_orbits_n7_q9() {
        let (orbits, xi) = dagger_orbits(&gamma(7, 9));
        assert_eq!(orbits.len(), 2);
        let a = orbit_containing(&orbits, 1).unwrap();
        assert_eq!(a.members, alloc::vec![1, 2, 4]);
        assert_eq!(a.orbit_type, DaggerOrbitType::Asymmetric);
        let b = orbit_containing(&orbits, 3).unwrap();
        assert_eq!(b.members, alloc::vec![3, 5, 6]);
        assert_eq!(b.orbit_type, DaggerOrbitType::Asymmetric);
        // one <Q> x <+-1>-class
        assert_eq!(xi, alloc::vec![1]);
    }

    #[test]
    fn dagger_orbits_n6_q5() {
        let (orbits, xi) = dagger_orbits(&gamma(6, 5));
        let o1 = orbit_containing(&orbits, 1).unwrap();
        assert_eq!(o1.members, alloc::vec![1, 5]);
        assert_eq!(o1.orbit_type, DaggerOrbitType::SymmetricNonsingleton);
        let o2 = orbit_containing(&orbits, 2).unwrap();
        assert_eq!(o2.members, alloc::vec![2, 4]);
        assert_eq!(o2.orbit_type, DaggerOrbitType::SymmetricNonsingleton);
        let o3 = orbit_containing(&orbits, 3).unwrap();
        assert_eq!(o3.orbit_type, DaggerOrbitType::SymmetricSingleton);
        assert_eq!(xi, alloc::vec![1, 2, 3]);
    }

    #[test]
    fn sgn_pinned_values() {
        assert_eq!(sgn_q_mod_n(7, 2).unwrap().sign, 1); // two 3-cycles
        assert_eq!(sgn_q_mod_n(4, 3).unwrap().sign, -1); // the transposition (1 3)
        assert_eq!(sgn_q_mod_n(9, 1).unwrap().sign, 1);
        assert!(sgn_q_mod_n(6, 3).is_err());
    }

    #[test]
    fn sgn_cross_checks_agree() {
        for n in 2u64..=40 {
            for q in 2u64..=49 {
                if gcd(q, n) != 1 {
                    continue;
                }
                let rep = sgn_q_mod_n(n, q).unwrap();
                assert_eq!(rep.sign, rep.orbit_census_sign, "census at n={n}, q={q}");
                if let Some(j) = rep.jacobi_sign {
                    assert_eq!(rep.sign, j, "Zolotarev at n={n}, q={q}");
                }
            }
        }
    }
}
