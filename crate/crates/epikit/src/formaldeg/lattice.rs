//! Finite-rank integer modules with cyclic-by-cyclic group actions:
//! coinvariants, fixed points, torus point counts, and the elementary
//! coinvariants product lemma.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{Error, Result};

use super::intmat::{
    column_lattice_basis, kernel_basis, lattice_index, rational_coordinates, smith_invariants,
    IntMat,
};

/// A free `Z`-module of finite rank with an action of a group generated by
/// two elements `a`, `b` of finite order, with `<a>` normal (so the group
/// is an extension of the cyclic `<image of b>` by the cyclic `<a>`).
#[derive(Debug, Clone)]
pub struct LatticeModule {
    rank: usize,
    a_gen: IntMat,
    b_gen: IntMat,
    a_order: u32,
    b_order: u32,
}

/// Multiplicative order of `m`, or `None` when it exceeds `cap`.
fn matrix_order(m: &IntMat, cap: u32) -> Option<u32> {
    let id = IntMat::identity(m.rows);
    let mut acc = m.clone();
    for k in 1..=cap {
        if acc == id {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

impl LatticeModule {
    pub fn new(a_gen: IntMat, b_gen: IntMat, a_order: u32, b_order: u32) -> Result<Self> {
        let rank = a_gen.rows;
        if a_gen.cols != rank || b_gen.rows != rank || b_gen.cols != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: b_gen.rows });
        }
        let check_order = |m: &IntMat, ord: u32, name: &str| -> Result<()> {
            let mut acc = IntMat::identity(rank);
            for _ in 0..ord {
                acc = acc.mul(m);
            }
            if acc != IntMat::identity(rank) {
                return Err(Error::BadParameters(format!(
                    "{name} does not satisfy its declared order {ord}"
                )));
            }
            Ok(())
        };
        check_order(&a_gen, a_order, "A-generator")?;
        check_order(&b_gen, b_order, "B-generator")?;
        // normality: b a b^{-1} must be a power of a
        let module = LatticeModule { rank, a_gen, b_gen, a_order, b_order };
        if module.conjugate_exponent().is_none() {
            return Err(Error::BadParameters(String::from(
                "<A-generator> is not normalized by the B-generator",
            )));
        }
        Ok(module)
    }

    /// The trivial module of a given rank.
    pub fn trivial(rank: usize) -> Self {
        LatticeModule {
            rank,
            a_gen: IntMat::identity(rank),
            b_gen: IntMat::identity(rank),
            a_order: 1,
            b_order: 1,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn a_gen(&self) -> &IntMat {
        &self.a_gen
    }

    pub fn b_gen(&self) -> &IntMat {
        &self.b_gen
    }

    pub fn a_order(&self) -> u32 {
        self.a_order
    }

    pub fn b_order(&self) -> u32 {
        self.b_order
    }

    /// The exponent `j` with `b a b^{-1} = a^j`, or `None` if `<a>` is not
    /// normalized.
    pub fn conjugate_exponent(&self) -> Option<u32> {
        // b a = a^j b
        let ba = self.b_gen.mul(&self.a_gen);
        let mut apow = IntMat::identity(self.rank);
        for j in 0..self.a_order {
            if apow.mul(&self.b_gen) == ba {
                return Some(j);
            }
            apow = apow.mul(&self.a_gen);
        }
        None
    }

    fn stacked_relations(&self, gens: &[&IntMat]) -> IntMat {
        let id = IntMat::identity(self.rank);
        let mut acc: Option<IntMat> = None;
        for g in gens {
            let rel = g.sub(&id);
            acc = Some(match acc {
                None => rel,
                Some(prev) => prev.hstack(&rel),
            });
        }
        acc.unwrap_or_else(|| IntMat::zero(self.rank, 0))
    }

    fn gens_for(&self, selector: Subgroup) -> Vec<&IntMat> {
        match selector {
            Subgroup::A => alloc::vec![&self.a_gen],
            Subgroup::B => alloc::vec![&self.b_gen],
            Subgroup::Whole => alloc::vec![&self.a_gen, &self.b_gen],
        }
    }

    /// Coinvariants `M / sum (g - 1) M` under the selected subgroup:
    /// free rank and torsion order.
    pub fn coinvariants(&self, selector: Subgroup) -> Coinvariants {
        let rel = self.stacked_relations(&self.gens_for(selector));
        if rel.cols == 0 {
            return Coinvariants { free_rank: self.rank, torsion: 1 };
        }
        let d = smith_invariants(&rel);
        let nonzero: Vec<i128> = d.iter().copied().filter(|&x| x != 0).collect();
        Coinvariants {
            free_rank: self.rank - nonzero.len(),
            torsion: nonzero.iter().map(|&x| x as u128).product(),
        }
    }

    /// Basis (columns) of the fixed sublattice of the selected subgroup.
    pub fn fixed_sublattice(&self, selector: Subgroup) -> IntMat {
        let id = IntMat::identity(self.rank);
        let mut stacked: Option<IntMat> = None;
        for g in self.gens_for(selector) {
            let rel = g.sub(&id);
            stacked = Some(match stacked {
                None => rel,
                Some(prev) => prev.vstack(&rel),
            });
        }
        kernel_basis(&stacked.expect("at least one generator"))
    }
}

/// Selector for the subgroup an invariant is taken under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgroup {
    A,
    B,
    Whole,
}

/// Structure of a coinvariant module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coinvariants {
    pub free_rank: usize,
    pub torsion: u128,
}

impl Coinvariants {
    pub fn finite_order(&self) -> Option<u128> {
        if self.free_rank == 0 {
            Some(self.torsion)
        } else {
            None
        }
    }
}

/// `|(M (x) kbar^x)^Fr| = |det(q * A - 1)|` for the Frobenius matrix `A`;
/// an answer of zero violates ellipticity and is flagged.
pub fn torus_fixed_points(frobenius: &IntMat, q: u64) -> Result<u128> {
    let n = frobenius.rows;
    let id = IntMat::identity(n);
    let mut scaled = frobenius.clone();
    for i in 0..n {
        for j in 0..n {
            scaled[(i, j)] *= q as i128;
        }
    }
    let det = scaled.sub(&id).det();
    if det == 0 {
        return Err(Error::NotElliptic(String::from(
            "q Fr - 1 is singular: infinitely many fixed points",
        )));
    }
    Ok(det.unsigned_abs())
}

/// Order of the fixed subgroup of the B-generator acting on the
/// A-coinvariants `M / (a - 1) M`; `None` when infinite.
pub fn fixed_points_on_coinvariants(module: &LatticeModule) -> Option<u128> {
    let rank = module.rank();
    let id = IntMat::identity(rank);
    let rel = module.a_gen().sub(&id);
    let lambda = column_lattice_basis(&rel);
    let b_minus_one = module.b_gen().sub(&id);
    // L = { x : (b - 1) x in Lambda }: kernel of [b-1 | -Lambda] projected
    // to the x block
    let neg_lambda = {
        let mut m = lambda.clone();
        for i in 0..m.rows {
            for j in 0..m.cols {
                m[(i, j)] = -m[(i, j)];
            }
        }
        m
    };
    let block = b_minus_one.hstack(&neg_lambda);
    let ker = kernel_basis(&block);
    // project to the first `rank` coordinates and take the lattice they span
    let mut proj = IntMat::zero(rank, ker.cols);
    for j in 0..ker.cols {
        for i in 0..rank {
            proj[(i, j)] = ker[(i, j)];
        }
    }
    let l_basis = column_lattice_basis(&proj);
    if l_basis.cols != lambda.cols {
        return None; // ranks differ: infinite fixed subgroup
    }
    lattice_index(&l_basis, &lambda)
}

/// Outcome of the coinvariants product lemma on one module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeLemmaOutcome {
    /// `M^Gamma != 0`: the lemma's hypothesis fails.
    HypothesisViolated,
    /// All three orders, with the verdict `m_gamma == m_a_fixed_b *
    /// m_fixed_a_b`.
    Checked {
        m_gamma: u128,
        /// `|M_A^B|`: fixed points of B on the A-coinvariants.
        m_a_fixed_b: u128,
        /// `|M^A_B|`: B-coinvariants of the A-fixed sublattice.
        m_fixed_a_b: u128,
        holds: bool,
    },
}

/// Check `|M_Gamma| = |M_A^B| * |M^A_B|` for a module with `M^Gamma = 0`,
/// computing all three orders through Smith normal form and fixed-point
/// lattices.
pub fn lattice_lemma_check(module: &LatticeModule) -> Result<LatticeLemmaOutcome> {
    // hypothesis: no whole-group fixed vectors
    if module.fixed_sublattice(Subgroup::Whole).cols != 0 {
        return Ok(LatticeLemmaOutcome::HypothesisViolated);
    }
    let m_gamma = module
        .coinvariants(Subgroup::Whole)
        .finite_order()
        .ok_or_else(|| Error::NotElliptic(String::from("whole coinvariants infinite")))?;
    let m_a_fixed_b = fixed_points_on_coinvariants(module)
        .ok_or_else(|| Error::NotElliptic(String::from("B-fixed points infinite")))?;
    // restrict b to the a-fixed sublattice and take coinvariants there
    let fixed_a = module.fixed_sublattice(Subgroup::A);
    let m_fixed_a_b = if fixed_a.cols == 0 {
        1
    } else {
        let b_image = module.b_gen().mul(&fixed_a);
        let coords = rational_coordinates(&fixed_a, &b_image)
            .ok_or_else(|| Error::BadParameters(String::from("fixed lattice not B-stable")))?;
        let k = fixed_a.cols;
        let mut restricted = IntMat::zero(k, k);
        for (i, row) in coords.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_integer() {
                    return Err(Error::BadParameters(String::from(
                        "B does not act integrally on the fixed lattice",
                    )));
                }
                restricted[(i, j)] = v.to_integer();
            }
        }
        let det = restricted.sub(&IntMat::identity(k)).det();
        if det == 0 {
            return Err(Error::NotElliptic(String::from(
                "B-coinvariants of the fixed lattice are infinite",
            )));
        }
        det.unsigned_abs()
    };
    Ok(LatticeLemmaOutcome::Checked {
        m_gamma,
        m_a_fixed_b,
        m_fixed_a_b,
        holds: m_gamma == m_a_fixed_b * m_fixed_a_b,
    })
}

/// A signed permutation matrix from a seeded generator.
fn random_signed_permutation(rng: &mut ChaCha8Rng, rank: usize) -> IntMat {
    let mut perm: Vec<usize> = (0..rank).collect();
    for i in (1..rank).rev() {
        let j = (rng.next_u64() as usize) % (i + 1);
        perm.swap(i, j);
    }
    let mut m = IntMat::zero(rank, rank);
    for (j, &pj) in perm.iter().enumerate() {
        m[(pj, j)] = if rng.next_u64() % 2 == 0 { 1 } else { -1 };
    }
    m
}

/// Generate a random module matching the lemma's hypotheses: rank at most
/// `max_rank`, cyclic orders at most `max_order`, `<a>` normal, and
/// `M^Gamma = 0`. Deterministic in the seed.
pub fn random_lattice_instance(seed: u64, max_rank: usize, max_order: u32) -> LatticeModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rank = 1 + (rng.next_u64() as usize) % max_rank;
        let a = random_signed_permutation(&mut rng, rank);
        let b = random_signed_permutation(&mut rng, rank);
        let Some(a_ord) = matrix_order(&a, max_order) else { continue };
        let Some(b_ord) = matrix_order(&b, max_order) else { continue };
        let Ok(module) = LatticeModule::new(a, b, a_ord, b_ord) else {
            continue;
        };
        if module.fixed_sublattice(Subgroup::Whole).cols != 0 {
            continue;
        }
        return module;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coinvariants_examples() {
        // M = Z with action -1: coinvariants Z/2
        let m = LatticeModule::new(
            IntMat::from_rows(&[alloc::vec![-1]]),
            IntMat::identity(1),
            2,
            1,
        )
        .unwrap();
        assert_eq!(
            m.coinvariants(Subgroup::A),
            Coinvariants { free_rank: 0, torsion: 2 }
        );
        // trivial action: free of full rank
        let t = LatticeModule::trivial(3);
        assert_eq!(
            t.coinvariants(Subgroup::Whole),
            Coinvariants { free_rank: 3, torsion: 1 }
        );
    }

    #[test]
    fn torus_fixed_points_examples() {
        // empty module
        assert_eq!(torus_fixed_points(&IntMat::zero(0, 0), 5).unwrap(), 1);
        // M = Z, A = 1, q = 5: |5 - 1| = 4
        assert_eq!(torus_fixed_points(&IntMat::identity(1), 5).unwrap(), 4);
        // rotation by swap-negate at q = 3: |det(3A - 1)| = 10
        let a = IntMat::from_rows(&[alloc::vec![0, -1], alloc::vec![1, 0]]);
        assert_eq!(torus_fixed_points(&a, 3).unwrap(), 10);
        // singular case flagged
        assert!(torus_fixed_points(&IntMat::identity(1), 1).is_err());
    }

    #[test]
    fn lemma_pinned_instances() {
        // M = Z, A trivial, B = -1: 2 = 1 * 2
        let m = LatticeModule::new(
            IntMat::identity(1),
            IntMat::from_rows(&[alloc::vec![-1]]),
            1,
            2,
        )
        .unwrap();
        assert_eq!(
            lattice_lemma_check(&m).unwrap(),
            LatticeLemmaOutcome::Checked { m_gamma: 2, m_a_fixed_b: 1, m_fixed_a_b: 2, holds: true }
        );
        // M = Z^2, A = -1, B = swap: |M_Gamma| = 2 = 2 * 1
        let a = IntMat::from_rows(&[alloc::vec![-1, 0], alloc::vec![0, -1]]);
        let b = IntMat::from_rows(&[alloc::vec![0, 1], alloc::vec![1, 0]]);
        let m = LatticeModule::new(a, b, 2, 2).unwrap();
        assert_eq!(
            lattice_lemma_check(&m).unwrap(),
            LatticeLemmaOutcome::Checked { m_gamma: 2, m_a_fixed_b: 2, m_fixed_a_b: 1, holds: true }
        );
        // M = Z^2, A = swap, B trivial: fixed diagonal, hypothesis violated
        let a = IntMat::from_rows(&[alloc::vec![0, 1], alloc::vec![1, 0]]);
        let m = LatticeModule::new(a, IntMat::identity(2), 2, 1).unwrap();
        assert_eq!(lattice_lemma_check(&m).unwrap(), LatticeLemmaOutcome::HypothesisViolated);
    }

    #[test]
    fn normality_validation() {
        // a = 3-cycle on Z^3, b = a transposition conjugating it to its
        // inverse: <a> normal
        let a = IntMat::from_rows(&[
            alloc::vec![0, 0, 1],
            alloc::vec![1, 0, 0],
            alloc::vec![0, 1, 0],
        ]);
        let b = IntMat::from_rows(&[
            alloc::vec![0, 1, 0],
            alloc::vec![1, 0, 0],
            alloc::vec![0, 0, 1],
        ]);
        let m = LatticeModule::new(a.clone(), b, 3, 2).unwrap();
        assert_eq!(m.conjugate_exponent(), Some(2));
        // a cycle and an overlapping 4-cycle do not normalize in S_4
        let a4 = IntMat::from_rows(&[
            alloc::vec![0, 1, 0, 0],
            alloc::vec![1, 0, 0, 0],
            alloc::vec![0, 0, 1, 0],
            alloc::vec![0, 0, 0, 1],
        ]);
        let c4 = IntMat::from_rows(&[
            alloc::vec![0, 0, 0, 1],
            alloc::vec![1, 0, 0, 0],
            alloc::vec![0, 1, 0, 0],
            alloc::vec![0, 0, 1, 0],
        ]);
        assert!(LatticeModule::new(a4, c4, 2, 4).is_err());
    }

    #[test]
    fn random_instances_satisfy_lemma() {
        for seed in 0..60u64 {
            let module = random_lattice_instance(seed, 5, 6);
            match lattice_lemma_check(&module).unwrap() {
                LatticeLemmaOutcome::HypothesisViolated => {
                    panic!("generator must filter out fixed vectors")
                }
                LatticeLemmaOutcome::Checked { holds, m_gamma, m_a_fixed_b, m_fixed_a_b } => {
                    assert!(
                        holds,
                        "seed {seed}: {m_gamma} != {m_a_fixed_b} * {m_fixed_a_b}"
                    );
                }
            }
        }
    }
}
