//! The toral sign invariant of a maximal torus, computed through its
//! combinatorial reductions: a gauge-independent zeta sum and a closed-form
//! product, together with the stable-class variation, the Kottwitz sign,
//! and the character built from the invariant.
//!
//! Both formulas assume the inertia action is tame and generated by a
//! regular elliptic element; that hypothesis is carried as a flag on the
//! underlying [`GaloisRootAction`].

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::rootgalois::{GaloisRootAction, Gauge};
use crate::{Error, Result};

/// A Galois action together with the canonical choices entering the
/// invariant: for each symmetric orbit an element swapping a root with its
/// negative, and the a-data valuation rule (valuation one exactly on roots
/// whose inertia orbit is preserved by negation).
#[derive(Debug, Clone)]
pub struct TwistData<'a> {
    action: &'a GaloisRootAction,
    tau_by_root: BTreeMap<usize, usize>,
}

impl<'a> TwistData<'a> {
    pub fn new(action: &'a GaloisRootAction) -> Result<Self> {
        if !action.tame_regular_elliptic() {
            return Err(Error::BadParameters(String::from(
                "action must be flagged tame regular elliptic",
            )));
        }
        Ok(TwistData { action, tau_by_root: BTreeMap::new() })
    }

    /// Override the swap element used for `root` (it must exchange the root
    /// with its negative); used to confirm the invariant does not depend on
    /// this choice.
    pub fn with_tau(mut self, root: usize, element: usize) -> Result<Self> {
        if self.action.apply(element, root) != self.action.datum().negation(root) {
            return Err(Error::InvalidAction(String::from(
                "element does not swap the root with its negative",
            )));
        }
        self.tau_by_root.insert(root, element);
        Ok(self)
    }

    pub fn action(&self) -> &GaloisRootAction {
        self.action
    }

    /// The swap element for `root`: the chosen one, defaulting to the
    /// lexicographically least matrix among the qualifying elements.
    fn tau(&self, root: usize) -> Result<usize> {
        if let Some(&t) = self.tau_by_root.get(&root) {
            return Ok(t);
        }
        self.action
            .tau_candidates(root)
            .into_iter()
            .min_by(|&a, &b| self.action.element(a).cmp(self.action.element(b)))
            .ok_or(Error::AsymmetricRoot)
    }

    /// The zeta formula: `(-1)^{zeta_p}` with
    /// `zeta_p = sum <alpha, beta^vee>` over roots `beta` with
    /// `p(beta) = +1`, `p(tau^{-1} beta) = -1`, and inertia orbit of `beta`
    /// preserved by negation. Independent of the gauge.
    pub fn toral_invariant_zeta(&self, alpha: usize, gauge: &Gauge) -> Result<i32> {
        let action = self.action;
        let datum = action.datum();
        if !action.orbit_of(alpha).symmetric {
            return Err(Error::AsymmetricRoot);
        }
        let tau = self.tau(alpha)?;
        let tau_inv = action.inverse_on_roots(tau);
        let mut zeta = 0i64;
        for beta in 0..datum.num_roots() {
            if gauge.value(beta) != 1 {
                continue;
            }
            if gauge.value(action.apply(tau_inv, beta)) != -1 {
                continue;
            }
            if !action.inertia_orbit_symmetric(beta) {
                continue;
            }
            zeta += datum.pairing(alpha, beta);
        }
        Ok(if zeta.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    /// The closed form: the product of `(-1)^{<alpha, beta^vee>}` over
    /// positive roots whose inertia orbit is not preserved by negation.
    /// Agrees with the zeta formula on every valid input.
    pub fn toral_invariant_closed(&self, alpha: usize) -> Result<i32> {
        let action = self.action;
        let datum = action.datum();
        if !action.orbit_of(alpha).symmetric {
            return Err(Error::AsymmetricRoot);
        }
        let mut exponent = 0i64;
        for beta in 0..datum.num_roots() {
            if !datum.is_positive(beta) {
                continue;
            }
            if action.inertia_orbit_symmetric(beta) {
                continue;
            }
            exponent += datum.pairing(alpha, beta);
        }
        Ok(if exponent.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    /// The full invariant: one sign per symmetric orbit, keyed by the orbit
    /// representative, computed via the closed form and cross-checked
    /// against the zeta formula at the representative.
    pub fn invariant_map(&self) -> Result<ToralInvariantMap> {
        let gauge = Gauge::positivity(self.action.datum());
        let mut values = BTreeMap::new();
        for orbit in self.action.orbits() {
            if !orbit.symmetric {
                continue;
            }
            let closed = self.toral_invariant_closed(orbit.representative)?;
            let zeta = self.toral_invariant_zeta(orbit.representative, &gauge)?;
            if closed != zeta {
                return Err(Error::InvalidAction(String::from(
                    "zeta and closed forms disagree; invariant hypotheses violated",
                )));
            }
            values.insert(orbit.representative, closed);
        }
        Ok(ToralInvariantMap { values })
    }
}

/// Signs attached to the symmetric orbits, keyed by orbit representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToralInvariantMap {
    values: BTreeMap<usize, i32>,
}

impl ToralInvariantMap {
    pub fn from_values(values: BTreeMap<usize, i32>) -> Self {
        ToralInvariantMap { values }
    }

    pub fn value(&self, orbit_representative: usize) -> Option<i32> {
        self.values.get(&orbit_representative).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_trivial(&self) -> bool {
        self.values.values().all(|&v| v == 1)
    }
}

/// How the invariant changes across the stable class:
/// `(-1)^{<lambda, sum_{sigma in Gamma/Gamma_{+-alpha}} sigma alpha>}`.
/// Multiplicative in `lambda`.
pub fn stable_variation(
    action: &GaloisRootAction,
    coweight: &[i64],
    alpha: usize,
) -> Result<i32> {
    let datum = action.datum();
    if coweight.len() != datum.rank() {
        return Err(Error::DimensionMismatch { expected: datum.rank(), got: coweight.len() });
    }
    if !action.orbit_of(alpha).symmetric {
        return Err(Error::AsymmetricRoot);
    }
    let mut orbit_sum = alloc::vec![0i64; datum.rank()];
    for g in action.cosets_mod_stabilizer_pm(alpha) {
        let image = action.apply(g, alpha);
        for (acc, c) in orbit_sum.iter_mut().zip(datum.root(image)) {
            *acc += c;
        }
    }
    let pairing: i64 = orbit_sum.iter().zip(coweight).map(|(a, b)| a * b).sum();
    Ok(if pairing.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// The Kottwitz sign of the inner form indexed by an adjoint coweight:
/// `(-1)^{<2 rho, lambda>}`.
pub fn kottwitz_sign_from_coweight(
    datum: &crate::rootgalois::RootDatum,
    coweight: &[i64],
) -> Result<i32> {
    let pairing = datum.two_rho_pairing(coweight)?;
    Ok(if pairing.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Kind of element the invariant character is evaluated at, according to
/// the topological Jordan decomposition of its root values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    TopologicallySemisimple,
    TopologicallyUnipotent,
}

/// The character value `epsilon_f(gamma)`: the product of `f` over the
/// symmetric orbits where the root value is nontrivial for topologically
/// semisimple root values, and `+1` in the topologically unipotent case.
pub fn epsilon_f_value(
    map: &ToralInvariantMap,
    active_orbits: &[usize],
    kind: ElementKind,
) -> Result<i32> {
    match kind {
        ElementKind::TopologicallyUnipotent => Ok(1),
        ElementKind::TopologicallySemisimple => {
            let mut acc = 1;
            for &rep in active_orbits {
                acc *= map.value(rep).ok_or(Error::AsymmetricRoot)?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootgalois::RootDatum;
    use alloc::vec::Vec;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    #[test]
    fn a1_sign_action_values() {
        let action = GaloisRootAction::a1_sign_action();
        let twist = TwistData::new(&action).unwrap();
        let gauge = Gauge::positivity(action.datum());
        let alpha = action.datum().index_of(&[1]).unwrap();
        // zeta = <alpha, alpha^vee> = 2, so the invariant is +1
        assert_eq!(twist.toral_invariant_zeta(alpha, &gauge).unwrap(), 1);
        // closed form: the only orbit is inertially symmetric, empty product
        assert_eq!(twist.toral_invariant_closed(alpha).unwrap(), 1);
    }

    #[test]
    fn a2_dihedral_vanishing() {
        let action = GaloisRootAction::type_a_coxeter(2, true);
        let twist = TwistData::new(&action).unwrap();
        let gauge = Gauge::positivity(action.datum());
        for orbit in action.orbits() {
            assert!(orbit.symmetric);
            for &alpha in &orbit.members {
                assert_eq!(twist.toral_invariant_zeta(alpha, &gauge).unwrap(), 1);
                assert_eq!(twist.toral_invariant_closed(alpha).unwrap(), 1);
            }
        }
    }

    #[test]
    fn gl4_inertially_symmetric_orbit_value() {
        let action = GaloisRootAction::gln(4, 3).unwrap();
        let twist = TwistData::new(&action).unwrap();
        let gauge = Gauge::positivity(action.datum());
        let alpha = action.datum().index_of(&[1, 0, -1, 0]).unwrap();
        assert_eq!(twist.toral_invariant_zeta(alpha, &gauge).unwrap(), 1);
        assert_eq!(twist.toral_invariant_closed(alpha).unwrap(), 1);
    }

    #[test]
    fn asymmetric_roots_are_rejected() {
        let action = GaloisRootAction::type_a_coxeter(2, false);
        let twist = TwistData::new(&action).unwrap();
        let gauge = Gauge::positivity(action.datum());
        assert_eq!(
            twist.toral_invariant_zeta(0, &gauge).unwrap_err(),
            Error::AsymmetricRoot
        );
        assert_eq!(twist.toral_invariant_closed(0).unwrap_err(), Error::AsymmetricRoot);
    }

    #[test]
    fn gauge_independence_under_random_flips() {
        let action = GaloisRootAction::gln(6, 5).unwrap();
        let twist = TwistData::new(&action).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for orbit in action.orbits() {
            if !orbit.symmetric {
                continue;
            }
            let alpha = orbit.representative;
            let base = twist
                .toral_invariant_zeta(alpha, &Gauge::positivity(action.datum()))
                .unwrap();
            let mut gauge = Gauge::positivity(action.datum());
            for _ in 0..120 {
                let gamma = (rng.next_u64() as usize) % action.datum().num_roots();
                gauge.flip_pair(action.datum(), gamma);
                assert_eq!(twist.toral_invariant_zeta(alpha, &gauge).unwrap(), base);
            }
        }
    }

    #[test]
    fn tau_independence() {
        let action = GaloisRootAction::gln(4, 3).unwrap();
        let alpha = action.datum().index_of(&[1, 0, -1, 0]).unwrap();
        let gauge = Gauge::positivity(action.datum());
        let base = TwistData::new(&action)
            .unwrap()
            .toral_invariant_zeta(alpha, &gauge)
            .unwrap();
        for tau in action.tau_candidates(alpha) {
            let twist = TwistData::new(&action).unwrap().with_tau(alpha, tau).unwrap();
            assert_eq!(twist.toral_invariant_zeta(alpha, &gauge).unwrap(), base);
        }
    }

    #[test]
    fn stable_variation_a1() {
        let action = GaloisRootAction::a1_sign_action();
        let alpha = action.datum().index_of(&[1]).unwrap();
        // lambda = fundamental coweight (= alpha^vee / 2): <lambda, alpha> = 1
        assert_eq!(stable_variation(&action, &[1], alpha).unwrap(), -1);
        assert_eq!(stable_variation(&action, &[0], alpha).unwrap(), 1);
        assert_eq!(stable_variation(&action, &[2], alpha).unwrap(), 1);
    }

    #[test]
    fn kottwitz_sign_a1() {
        let datum = RootDatum::type_a_adjoint(1);
        assert_eq!(kottwitz_sign_from_coweight(&datum, &[1]).unwrap(), -1);
        assert_eq!(kottwitz_sign_from_coweight(&datum, &[0]).unwrap(), 1);
        assert_eq!(kottwitz_sign_from_coweight(&datum, &[2]).unwrap(), 1);
    }

    #[test]
    fn elliptic_product_identity_small() {
        // product over symmetric orbits of the stable variation equals the
        // Kottwitz sign, for elliptic actions
        for r in [1usize, 2, 3, 4] {
            let action = GaloisRootAction::type_a_coxeter(r, true);
            assert!(action.is_elliptic());
            let mut rng = ChaCha8Rng::seed_from_u64(11 + r as u64);
            for _ in 0..50 {
                let coweight: Vec<i64> =
                    (0..r).map(|_| (rng.next_u64() % 7) as i64 - 3).collect();
                let mut prod = 1;
                for orbit in action.orbits() {
                    if orbit.symmetric {
                        prod *=
                            stable_variation(&action, &coweight, orbit.representative).unwrap();
                    }
                }
                assert_eq!(
                    prod,
                    kottwitz_sign_from_coweight(action.datum(), &coweight).unwrap()
                );
            }
        }
    }

    #[test]
    fn epsilon_f_cases() {
        let mut values = BTreeMap::new();
        values.insert(0usize, 1i32);
        values.insert(3usize, -1i32);
        let map = ToralInvariantMap::from_values(values);
        assert_eq!(
            epsilon_f_value(&map, &[0, 3], ElementKind::TopologicallySemisimple).unwrap(),
            -1
        );
        assert_eq!(
            epsilon_f_value(&map, &[0], ElementKind::TopologicallySemisimple).unwrap(),
            1
        );
        assert_eq!(
            epsilon_f_value(&map, &[0, 3], ElementKind::TopologicallyUnipotent).unwrap(),
            1
        );
        assert!(epsilon_f_value(&map, &[7], ElementKind::TopologicallySemisimple).is_err());
    }
}
