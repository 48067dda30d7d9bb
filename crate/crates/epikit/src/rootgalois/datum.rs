//! Root data and gauges.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A root datum with a designated positive system.
///
/// `roots[i]` is a character-lattice vector, `coroots[i]` the corresponding
/// coroot in the dual basis, and the pairing of a character with a coweight
/// is the dot product.
#[derive(Debug, Clone)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    positive: Vec<bool>,
    neg_of: Vec<usize>,
    index_by_vector: BTreeMap<Vec<i64>, usize>,
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        positive: Vec<bool>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        if roots.len() != coroots.len() || roots.len() != positive.len() {
            return bad(String::from("roots, coroots, and positivity must align"));
        }
        let mut index_by_vector = BTreeMap::new();
        for (i, r) in roots.iter().enumerate() {
            if r.len() != rank || coroots[i].len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: r.len() });
            }
            if index_by_vector.insert(r.clone(), i).is_some() {
                return bad(String::from("duplicate root"));
            }
        }
        let mut neg_of = vec![usize::MAX; roots.len()];
        for (i, r) in roots.iter().enumerate() {
            let neg: Vec<i64> = r.iter().map(|c| -c).collect();
            match index_by_vector.get(&neg) {
                Some(&j) => neg_of[i] = j,
                None => return bad(String::from("root set not closed under negation")),
            }
        }
        let datum = RootDatum { rank, roots, coroots, positive, neg_of, index_by_vector };
        // <alpha, alpha^vee> = 2
        for i in 0..datum.roots.len() {
            if datum.pairing(i, i) != 2 {
                return bad(String::from("<alpha, alpha^vee> must be 2"));
            }
            if datum.positive[i] == datum.positive[datum.neg_of[i]] {
                return bad(String::from("positivity must be odd under negation"));
            }
        }
        // reflections permute roots
        for a in 0..datum.roots.len() {
            for b in 0..datum.roots.len() {
                let refl = datum.reflect(a, b);
                if datum.index_by_vector.get(&refl).is_none() {
                    return bad(String::from("reflections must permute the root set"));
                }
            }
        }
        Ok(datum)
    }

    /// `s_a(root_b) = root_b - <root_b, coroot_a> root_a` as a vector.
    fn reflect(&self, a: usize, b: usize) -> Vec<i64> {
        let c = dot(&self.roots[b], &self.coroots[a]);
        self.roots[b]
            .iter()
            .zip(&self.roots[a])
            .map(|(&rb, &ra)| rb - c * ra)
            .collect()
    }

    /// The `GL_n` datum: lattice `Z^n`, roots `e_i - e_j`, upper-triangular
    /// positive system.
    pub fn gl(n: usize) -> Self {
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut positive = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut v = vec![0i64; n];
                v[i] = 1;
                v[j] = -1;
                roots.push(v.clone());
                coroots.push(v);
                positive.push(i < j);
            }
        }
        Self::new(n, roots, coroots, positive).expect("GL_n datum is valid")
    }

    /// The adjoint datum of type `A_r`: character lattice the root lattice
    /// in the simple-root basis, coweight lattice the fundamental coweights.
    pub fn type_a_adjoint(r: usize) -> Self {
        assert!(r >= 1);
        let cartan = |i: usize, j: usize| -> i64 {
            if i == j {
                2
            } else if i + 1 == j || j + 1 == i {
                -1
            } else {
                0
            }
        };
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut positive = Vec::new();
        for a in 0..r {
            for b in a..r {
                // alpha = alpha_a + ... + alpha_b
                let mut x = vec![0i64; r];
                for i in a..=b {
                    x[i] = 1;
                }
                // coroot coordinates in the fundamental-coweight basis:
                // y_i = <alpha_i, beta^vee> = sum_{j in [a,b]} C_{i j}
                let mut y = vec![0i64; r];
                for (i, yi) in y.iter_mut().enumerate() {
                    for j in a..=b {
                        *yi += cartan(i, j);
                    }
                }
                roots.push(x.clone());
                coroots.push(y.clone());
                positive.push(true);
                roots.push(x.iter().map(|c| -c).collect());
                coroots.push(y.iter().map(|c| -c).collect());
                positive.push(false);
            }
        }
        Self::new(r, roots, coroots, positive).expect("A_r adjoint datum is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.positive[i]
    }

    pub fn negation(&self, i: usize) -> usize {
        self.neg_of[i]
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index_by_vector.get(v).copied()
    }

    /// `<root_i, coroot_j>`.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        dot(&self.roots[i], &self.coroots[j])
    }

    /// Sum of the positive roots as a character vector.
    pub fn two_rho(&self) -> Vec<i64> {
        let mut acc = vec![0i64; self.rank];
        for (i, r) in self.roots.iter().enumerate() {
            if self.positive[i] {
                for (a, c) in acc.iter_mut().zip(r) {
                    *a += c;
                }
            }
        }
        acc
    }

    /// `<2 rho, lambda>` for a coweight vector.
    pub fn two_rho_pairing(&self, coweight: &[i64]) -> Result<i64> {
        if coweight.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: coweight.len() });
        }
        Ok(dot(&self.two_rho(), coweight))
    }

    /// `<root_i, lambda>` for a coweight vector.
    pub fn root_coweight_pairing(&self, i: usize, coweight: &[i64]) -> Result<i64> {
        if coweight.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: coweight.len() });
        }
        Ok(dot(&self.roots[i], coweight))
    }
}

/// A function on roots with `p(-alpha) = -p(alpha)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge {
    values: Vec<i8>,
}

impl Gauge {
    pub fn positivity(datum: &RootDatum) -> Self {
        Gauge {
            values: (0..datum.num_roots())
                .map(|i| if datum.is_positive(i) { 1 } else { -1 })
                .collect(),
        }
    }

    pub fn from_values(datum: &RootDatum, values: Vec<i8>) -> Result<Self> {
        if values.len() != datum.num_roots() {
            return Err(Error::DimensionMismatch {
                expected: datum.num_roots(),
                got: values.len(),
            });
        }
        for i in 0..values.len() {
            if values[i].abs() != 1 || values[i] != -values[datum.negation(i)] {
                return Err(Error::InvalidAction(String::from(
                    "gauge must be a sign function odd under negation",
                )));
            }
        }
        Ok(Gauge { values })
    }

    pub fn value(&self, root: usize) -> i8 {
        self.values[root]
    }

    /// Flip the gauge on the single pair `{gamma, -gamma}`.
    pub fn flip_pair(&mut self, datum: &RootDatum, gamma: usize) {
        self.values[gamma] = -self.values[gamma];
        let n = datum.negation(gamma);
        self.values[n] = -self.values[n];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl3_basic_shape() {
        let d = RootDatum::gl(3);
        assert_eq!(d.num_roots(), 6);
        assert_eq!(d.two_rho(), vec![2, 0, -2]);
        for i in 0..6 {
            assert_eq!(d.pairing(i, i), 2);
            assert_eq!(d.negation(d.negation(i)), i);
        }
    }

    #[test]
    fn a2_adjoint_pairings() {
        let d = RootDatum::type_a_adjoint(2);
        assert_eq!(d.num_roots(), 6);
        // alpha_1 = (1,0); its coroot pairs to 2 with itself, -1 with alpha_2
        let a1 = d.index_of(&[1, 0]).unwrap();
        let a2 = d.index_of(&[0, 1]).unwrap();
        assert_eq!(d.pairing(a1, a2), -1);
        assert_eq!(d.pairing(a1, a1), 2);
        // highest root alpha_1 + alpha_2
        let hi = d.index_of(&[1, 1]).unwrap();
        assert_eq!(d.pairing(hi, hi), 2);
    }

    #[test]
    fn two_rho_pairing_examples() {
        // A_1 adjoint: 2 rho = alpha, fundamental coweight pairs to 1
        let d = RootDatum::type_a_adjoint(1);
        assert_eq!(d.two_rho_pairing(&[1]).unwrap(), 1);
        assert_eq!(d.two_rho_pairing(&[0]).unwrap(), 0);
        assert_eq!(d.two_rho_pairing(&[2]).unwrap(), 2); // alpha^vee = 2 * fundamental
        assert!(d.two_rho_pairing(&[1, 0]).is_err());
    }

    #[test]
    fn gauge_flip_and_validation() {
        let d = RootDatum::gl(2);
        let mut g = Gauge::positivity(&d);
        let i = d.index_of(&[1, -1]).unwrap();
        assert_eq!(g.value(i), 1);
        g.flip_pair(&d, i);
        assert_eq!(g.value(i), -1);
        assert_eq!(g.value(d.negation(i)), 1);
        assert!(Gauge::from_values(&d, vec![1, 1]).is_err());
    }
}
