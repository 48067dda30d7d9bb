//! The formal degree identity as exact symbolic arithmetic: both sides are
//! powers of `q` times rationals, assembled from dimension counts and
//! lattice invariants computed through Smith normal form.

mod intmat;
mod lattice;

pub use intmat::{column_lattice_basis, kernel_basis, lattice_index, smith_invariants, IntMat};
pub use lattice::{
    fixed_points_on_coinvariants, lattice_lemma_check, random_lattice_instance,
    torus_fixed_points, Coinvariants, LatticeLemmaOutcome, LatticeModule, Subgroup,
};

use alloc::format;
use num_rational::Ratio;

use crate::{Error, Result};

/// The integer inputs the degree formulas consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupCounts {
    /// Rank of the group (dimension of a maximal torus of the dual).
    pub rank: i64,
    /// `dim g^ = rank + num_roots`.
    pub dim_g_hat: i64,
    /// Dimension of the inertia-fixed part of the dual center.
    pub dim_z_inertia: i64,
    /// Dimension of the Galois-fixed part of the dual center.
    pub dim_z_galois: i64,
    /// Number of absolute roots.
    pub num_roots: i64,
    /// Order of the regular elliptic inertia element.
    pub e: i64,
    /// `rk(M) = dim_z_inertia - dim_z_galois`.
    pub rk_m: i64,
    /// `dim(G/A)` with `A` the maximal split central torus.
    pub dim_g_over_a: i64,
}

impl GroupCounts {
    pub fn new(
        rank: i64,
        num_roots: i64,
        dim_z_inertia: i64,
        dim_z_galois: i64,
        e: i64,
        dim_g_over_a: i64,
    ) -> Result<Self> {
        if e <= 0 {
            return Err(Error::BadParameters(format!("e must be positive, got {e}")));
        }
        Ok(GroupCounts {
            rank,
            dim_g_hat: rank + num_roots,
            dim_z_inertia,
            dim_z_galois,
            num_roots,
            e,
            rk_m: dim_z_inertia - dim_z_galois,
            dim_g_over_a,
        })
    }

    /// `GL_n`: rank `n`, `n(n-1)` roots, one-dimensional connected center
    /// equal to the split central torus, `e = n`.
    pub fn gl(n: u64) -> Self {
        let n = n as i64;
        GroupCounts::new(n, n * (n - 1), 1, 1, n, n * n - 1).expect("GL_n counts are valid")
    }
}

/// Lattice data of the torus entering the two degree formulas: the module
/// `M` with its Frobenius action, and the coweight module of `S/A` with
/// its inertia and Frobenius actions.
#[derive(Debug, Clone)]
pub struct FormalTorusData {
    /// Frobenius matrix on `M` (rank may be zero).
    pub m_frobenius: IntMat,
    /// `X_*(S/A)` with A-generator the inertia action and B-generator the
    /// Frobenius action.
    pub s_over_a: LatticeModule,
}

impl FormalTorusData {
    /// The `GL_n` torus: `M = 0` and `X_*(S/A) = Z^n / diagonal` with the
    /// coordinate shift as inertia and multiplication by `q` on indices as
    /// Frobenius.
    pub fn gl(n: u64, q: u64) -> Result<Self> {
        let n_us = n as usize;
        if n_us < 2 {
            return Err(Error::BadParameters(format!("need n >= 2, got {n}")));
        }
        // basis of Z^n/diag: images of e_0..e_{n-2}; e_{n-1} = -(sum)
        let reduce = |target: usize| -> alloc::vec::Vec<i128> {
            let mut col = alloc::vec![0i128; n_us - 1];
            if target == n_us - 1 {
                for v in col.iter_mut() {
                    *v = -1;
                }
            } else {
                col[target] = 1;
            }
            col
        };
        let perm_matrix = |perm: &dyn Fn(usize) -> usize| -> IntMat {
            let mut m = IntMat::zero(n_us - 1, n_us - 1);
            for j in 0..n_us - 1 {
                let col = reduce(perm(j));
                for (i, &v) in col.iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
            m
        };
        let shift = perm_matrix(&|j| (j + 1) % n_us);
        let frob = perm_matrix(&|j| (q as usize * j) % n_us);
        // order of the Frobenius permutation on Z/nZ
        let mut f = 1u32;
        let mut acc = q % n;
        while acc != 1 {
            acc = acc * (q % n) % n;
            f += 1;
            if f as u64 > n {
                return Err(Error::BadParameters(format!("gcd(q, n) != 1 for q={q}, n={n}")));
            }
        }
        let s_over_a = LatticeModule::new(shift, frob, n as u32, f)?;
        Ok(FormalTorusData { m_frobenius: IntMat::zero(0, 0), s_over_a })
    }
}

/// An exact value `q^exponent * factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicDegree {
    pub exponent: Ratio<i64>,
    pub factor: Ratio<i128>,
}

impl core::fmt::Display for SymbolicDegree {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "q^({}) * {}", self.exponent, self.factor)
    }
}

/// The absolute adjoint gamma value over the component-group order, as an
/// exact symbolic pair:
/// exponent `(dim g^ + dim z^I + #R/e)/2 - dim z^Gamma`, factor
/// `|M_Fr| / (|X_*(S/A)_Gamma| * |(M (x) kbar^x)^Fr|)`.
pub fn gamma_rhs(counts: &GroupCounts, torus: &FormalTorusData, q: u64) -> Result<SymbolicDegree> {
    validate_counts(counts, torus)?;
    let exponent = Ratio::new(
        (counts.dim_g_hat + counts.dim_z_inertia) * counts.e + counts.num_roots,
        2 * counts.e,
    ) - Ratio::from_integer(counts.dim_z_galois);
    let m_module = LatticeModule::new(
        torus.m_frobenius.clone(),
        IntMat::identity(torus.m_frobenius.rows),
        matrix_order_loose(&torus.m_frobenius),
        1,
    )?;
    let m_fr = m_module
        .coinvariants(Subgroup::A)
        .finite_order()
        .ok_or_else(|| Error::NotElliptic(alloc::string::String::from("M_Fr infinite")))?;
    let x_gamma = torus
        .s_over_a
        .coinvariants(Subgroup::Whole)
        .finite_order()
        .ok_or_else(|| {
            Error::NotElliptic(alloc::string::String::from("X_*(S/A)_Gamma infinite"))
        })?;
    let torus_points = torus_fixed_points(&torus.m_frobenius, q)?;
    let factor = Ratio::new(m_fr as i128, (x_gamma * torus_points) as i128);
    Ok(SymbolicDegree { exponent, factor })
}

/// The formal degree as an exact symbolic pair: exponent
/// `(dim(G/A) + rk M + #R/e)/2`, factor
/// `1 / (|X_*(S/A)_I^Fr| * |(M (x) kbar^x)^Fr|)`.
pub fn degree_lhs(counts: &GroupCounts, torus: &FormalTorusData, q: u64) -> Result<SymbolicDegree> {
    validate_counts(counts, torus)?;
    let exponent = Ratio::new(
        (counts.dim_g_over_a + counts.rk_m) * counts.e + counts.num_roots,
        2 * counts.e,
    );
    let fixed = fixed_points_on_coinvariants(&torus.s_over_a).ok_or_else(|| {
        Error::NotElliptic(alloc::string::String::from(
            "Frobenius-fixed points of the inertia coinvariants are infinite",
        ))
    })?;
    let torus_points = torus_fixed_points(&torus.m_frobenius, q)?;
    Ok(SymbolicDegree { exponent, factor: Ratio::new(1, (fixed * torus_points) as i128) })
}

fn matrix_order_loose(m: &IntMat) -> u32 {
    if m.rows == 0 {
        return 1;
    }
    let id = IntMat::identity(m.rows);
    let mut acc = m.clone();
    for k in 1..=4096u32 {
        if acc == id {
            return k;
        }
        acc = acc.mul(m);
    }
    panic!("Frobenius matrix has unreasonably large order");
}

fn validate_counts(counts: &GroupCounts, torus: &FormalTorusData) -> Result<()> {
    if counts.dim_g_hat != counts.rank + counts.num_roots {
        return Err(Error::BadParameters(format!(
            "dim g^ = {} must equal rank + #R = {}",
            counts.dim_g_hat,
            counts.rank + counts.num_roots
        )));
    }
    if counts.rk_m != counts.dim_z_inertia - counts.dim_z_galois {
        return Err(Error::BadParameters(alloc::string::String::from(
            "rk(M) must equal dim z^I - dim z^Gamma",
        )));
    }
    if torus.m_frobenius.rows as i64 != counts.rk_m {
        return Err(Error::BadParameters(format!(
            "M has rank {} but the counts declare {}",
            torus.m_frobenius.rows, counts.rk_m
        )));
    }
    Ok(())
}

/// Both sides of the formal degree identity for `GL_n` over residue
/// cardinality `q`, with the exact verdict.
#[derive(Debug, Clone)]
pub struct FormalDegreeReport {
    pub lhs: SymbolicDegree,
    pub rhs: SymbolicDegree,
    pub equal: bool,
}

pub fn verify_formal_gln(n: u64, q: u64) -> Result<FormalDegreeReport> {
    if n < 2 {
        return Err(Error::BadParameters(format!("need n >= 2, got {n}")));
    }
    let pp = crate::exactnum::PrimePower::from_cardinality(q)?;
    if n % pp.p() == 0 {
        return Err(Error::BadParameters(format!("p must not divide n (n={n}, q={q})")));
    }
    let counts = GroupCounts::gl(n);
    let torus = FormalTorusData::gl(n, q)?;
    let lhs = degree_lhs(&counts, &torus, q)?;
    let rhs = gamma_rhs(&counts, &torus, q)?;
    let equal = lhs == rhs;
    Ok(FormalDegreeReport { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_and_gl3_exact_values() {
        let r2 = verify_formal_gln(2, 3).unwrap();
        assert!(r2.equal);
        assert_eq!(r2.lhs.exponent, Ratio::from_integer(2));
        assert_eq!(r2.lhs.factor, Ratio::new(1, 2));
        let r3 = verify_formal_gln(3, 5).unwrap();
        assert!(r3.equal);
        assert_eq!(r3.lhs.exponent, Ratio::from_integer(5));
        assert_eq!(r3.lhs.factor, Ratio::new(1, 3));
    }

    #[test]
    fn gln_general_shape() {
        for (n, q) in [(4u64, 3u64), (5, 7), (6, 5), (7, 9), (12, 49)] {
            let r = verify_formal_gln(n, q).unwrap();
            assert!(r.equal, "formal degree identity at n={n}, q={q}");
            let n = n as i64;
            assert_eq!(r.lhs.exponent, Ratio::new(n * n + n - 2, 2), "exponent at n={n}");
            assert_eq!(r.lhs.factor, Ratio::new(1, n as i128), "factor 1/n at n={n}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(verify_formal_gln(3, 3).is_err());
        assert!(verify_formal_gln(4, 2).is_err());
        assert!(verify_formal_gln(1, 5).is_err());
    }

    #[test]
    fn duality_of_coinvariant_orders() {
        // |det(A - 1)| = |det(A^T - 1)| as orders of dual coinvariants
        let mats = [
            IntMat::from_rows(&[alloc::vec![0, -1], alloc::vec![1, 0]]),
            IntMat::from_rows(&[
                alloc::vec![0, 1, 0],
                alloc::vec![0, 0, 1],
                alloc::vec![1, 0, 0],
            ]),
        ];
        for a in &mats {
            let n = a.rows;
            let mut at = IntMat::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    at[(i, j)] = a[(j, i)];
                }
            }
            let d1 = a.sub(&IntMat::identity(n)).det().unsigned_abs();
            let d2 = at.sub(&IntMat::identity(n)).det().unsigned_abs();
            assert_eq!(d1, d2);
        }
    }

    #[test]
    fn counts_invariants_enforced() {
        let counts = GroupCounts::gl(3);
        assert_eq!(counts.dim_g_hat, 9);
        assert_eq!(counts.rk_m, 0);
        let torus = FormalTorusData::gl(3, 7).unwrap();
        let mut bad = counts;
        bad.rk_m = 1;
        assert!(gamma_rhs(&bad, &torus, 7).is_err());
    }
}
