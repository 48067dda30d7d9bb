//! Finite group actions on root data and their orbit classification.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

use super::datum::RootDatum;

const GROUP_CAP: usize = 100_000;

/// A Galois orbit of roots with its symmetry flags.
#[derive(Debug, Clone)]
pub struct RootOrbit {
    /// Lexicographically least root vector in the orbit.
    pub representative: usize,
    /// Orbit members as root indices, ascending.
    pub members: Vec<usize>,
    /// Orbit is preserved by negation.
    pub symmetric: bool,
    /// Every inertia sub-orbit is preserved by negation.
    pub inertially_symmetric: bool,
    /// `[Gamma_{+-alpha} : Gamma_alpha]`, 2 exactly when symmetric.
    pub stabilizer_index: u8,
}

/// A root datum together with a finite group acting by lattice
/// automorphisms permuting the roots, a distinguished inertia subgroup, and
/// an optional Frobenius-class generator.
#[derive(Debug, Clone)]
pub struct GaloisRootAction {
    datum: RootDatum,
    /// Group elements as matrices (row-major), deterministic closure order.
    elements: Vec<Vec<i64>>,
    /// Root permutation of each element: `perm[g][root] = g(root)`.
    perms: Vec<Vec<usize>>,
    inertia: Vec<usize>,
    frobenius: Option<usize>,
    tame_regular_elliptic: bool,
    orbits: Vec<RootOrbit>,
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn mat_vec(n: usize, a: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum())
        .collect()
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

impl GaloisRootAction {
    pub fn new(
        datum: RootDatum,
        generators: Vec<Vec<i64>>,
        inertia_generators: Vec<Vec<i64>>,
        frobenius: Option<Vec<i64>>,
        tame_regular_elliptic: bool,
    ) -> Result<Self> {
        let n = datum.rank();
        for g in generators.iter().chain(&inertia_generators) {
            if g.len() != n * n {
                return Err(Error::DimensionMismatch { expected: n * n, got: g.len() });
            }
        }
        let elements = Self::close(n, &generators)?;
        let elt_index: BTreeMap<Vec<i64>, usize> =
            elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        // inertia must generate a subgroup of the closure
        let inertia_elts = Self::close(n, &inertia_generators)?;
        let mut inertia = Vec::new();
        for m in &inertia_elts {
            match elt_index.get(m) {
                Some(&i) => inertia.push(i),
                None => {
                    return Err(Error::InvalidAction(String::from(
                        "inertia generators leave the group",
                    )))
                }
            }
        }
        inertia.sort_unstable();
        let frobenius = match frobenius {
            None => None,
            Some(m) => Some(*elt_index.get(&m).ok_or_else(|| {
                Error::InvalidAction(String::from("Frobenius element is not in the group"))
            })?),
        };
        // root permutations
        let mut perms = Vec::with_capacity(elements.len());
        for m in &elements {
            let mut perm = Vec::with_capacity(datum.num_roots());
            for r in 0..datum.num_roots() {
                let image = mat_vec(n, m, datum.root(r));
                match datum.index_of(&image) {
                    Some(idx) => perm.push(idx),
                    None => {
                        return Err(Error::InvalidAction(format!(
                            "generator image {image:?} is not a root"
                        )))
                    }
                }
            }
            perms.push(perm);
        }
        let mut action = GaloisRootAction {
            datum,
            elements,
            perms,
            inertia,
            frobenius,
            tame_regular_elliptic,
            orbits: Vec::new(),
        };
        action.orbits = action.classify()?;
        Ok(action)
    }

    fn close(n: usize, generators: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        let mut elements = vec![identity(n)];
        let mut seen: BTreeSet<Vec<i64>> = elements.iter().cloned().collect();
        let mut frontier = 0;
        while frontier < elements.len() {
            let cur = elements[frontier].clone();
            frontier += 1;
            for g in generators {
                let next = mat_mul(n, g, &cur);
                if seen.insert(next.clone()) {
                    elements.push(next);
                    if elements.len() > GROUP_CAP {
                        return Err(Error::InvalidAction(String::from(
                            "group closure exceeds cap",
                        )));
                    }
                }
            }
        }
        Ok(elements)
    }

    fn classify(&self) -> Result<Vec<RootOrbit>> {
        let nroots = self.datum.num_roots();
        let mut orbit_of = vec![usize::MAX; nroots];
        let mut orbits = Vec::new();
        for start in 0..nroots {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(r) = stack.pop() {
                if !members.insert(r) {
                    continue;
                }
                orbit_of[r] = id;
                for perm in &self.perms {
                    stack.push(perm[r]);
                }
            }
            let members: Vec<usize> = members.into_iter().collect();
            let member_set: BTreeSet<usize> = members.iter().copied().collect();
            let symmetric = member_set.contains(&self.datum.negation(start))
                && members.iter().all(|&r| member_set.contains(&self.datum.negation(r)));
            // inertia sub-orbits: all symmetric or none (dichotomy)
            let mut i_sym_count = 0usize;
            let mut i_orbit_count = 0usize;
            let mut seen_i = BTreeSet::new();
            for &r in &members {
                if seen_i.contains(&r) {
                    continue;
                }
                let mut io = BTreeSet::new();
                let mut st = vec![r];
                while let Some(x) = st.pop() {
                    if !io.insert(x) {
                        continue;
                    }
                    for &gi in &self.inertia {
                        st.push(self.perms[gi][x]);
                    }
                }
                let io_sym = io.iter().all(|&x| io.contains(&self.datum.negation(x)));
                i_orbit_count += 1;
                if io_sym {
                    i_sym_count += 1;
                }
                seen_i.extend(io);
            }
            if i_sym_count != 0 && i_sym_count != i_orbit_count {
                return Err(Error::InvalidAction(String::from(
                    "inertia orbits violate the all-or-none symmetry dichotomy",
                )));
            }
            let inertially_symmetric = i_sym_count == i_orbit_count && i_orbit_count > 0;
            let representative = members
                .iter()
                .copied()
                .min_by(|&a, &b| self.datum.root(a).cmp(self.datum.root(b)))
                .expect("orbit nonempty");
            orbits.push(RootOrbit {
                representative,
                members,
                symmetric,
                inertially_symmetric: symmetric && inertially_symmetric,
                stabilizer_index: if symmetric { 2 } else { 1 },
            });
        }
        Ok(orbits)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn num_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, g: usize) -> &[i64] {
        &self.elements[g]
    }

    /// Indices of the full element list, identity first.
    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.elements.len()
    }

    pub fn inertia_elements(&self) -> &[usize] {
        &self.inertia
    }

    pub fn frobenius(&self) -> Option<usize> {
        self.frobenius
    }

    pub fn tame_regular_elliptic(&self) -> bool {
        self.tame_regular_elliptic
    }

    /// Image of a root under a group element.
    pub fn apply(&self, g: usize, root: usize) -> usize {
        self.perms[g][root]
    }

    /// Group element acting as the inverse of `g` on roots.
    pub fn inverse_on_roots(&self, g: usize) -> usize {
        let perm = &self.perms[g];
        for (h, cand) in self.perms.iter().enumerate() {
            if (0..perm.len()).all(|r| cand[perm[r]] == r) {
                return h;
            }
        }
        unreachable!("group is closed under inversion")
    }

    /// The memoized orbit partition.
    pub fn orbits(&self) -> &[RootOrbit] {
        &self.orbits
    }

    pub fn orbit_of(&self, root: usize) -> &RootOrbit {
        self.orbits
            .iter()
            .find(|o| o.members.binary_search(&root).is_ok())
            .expect("every root lies in an orbit")
    }

    /// Whether the inertia orbit of `root` is preserved by negation;
    /// by the dichotomy this is the orbit's `inertially_symmetric` flag
    /// whenever the orbit is symmetric, but it is meaningful for all roots.
    pub fn inertia_orbit_symmetric(&self, root: usize) -> bool {
        let mut io = BTreeSet::new();
        let mut st = vec![root];
        while let Some(x) = st.pop() {
            if !io.insert(x) {
                continue;
            }
            for &gi in &self.inertia {
                st.push(self.perms[gi][x]);
            }
        }
        io.iter().all(|&x| io.contains(&self.datum.negation(x)))
    }

    /// Elements exchanging `alpha` and `-alpha` (the nontrivial coset of
    /// the stabilizer pair), ascending.
    pub fn tau_candidates(&self, root: usize) -> Vec<usize> {
        let neg = self.datum.negation(root);
        self.elements()
            .filter(|&g| self.perms[g][root] == neg)
            .collect()
    }

    /// Stabilizer of the set `{alpha, -alpha}`.
    pub fn stabilizer_pm(&self, root: usize) -> Vec<usize> {
        let neg = self.datum.negation(root);
        self.elements()
            .filter(|&g| {
                let im = self.perms[g][root];
                im == root || im == neg
            })
            .collect()
    }

    /// Coset representatives for `Gamma / Gamma_{+-alpha}`, deterministic.
    pub fn cosets_mod_stabilizer_pm(&self, root: usize) -> Vec<usize> {
        let stab: BTreeSet<usize> = self.stabilizer_pm(root).into_iter().collect();
        let mut reps = Vec::new();
        let mut covered = BTreeSet::new();
        for g in self.elements() {
            if covered.contains(&g) {
                continue;
            }
            reps.push(g);
            // coset g * stab
            for &s in &stab {
                let gs = mat_mul(self.datum.rank(), &self.elements[g], &self.elements[s]);
                // find index
                for (h, m) in self.elements.iter().enumerate() {
                    if *m == gs {
                        covered.insert(h);
                        break;
                    }
                }
            }
        }
        reps
    }

    /// Rank of the fixed subspace of the group on the character lattice
    /// (equal to the fixed rank on the coweight lattice).
    pub fn fixed_rank(&self) -> usize {
        let n = self.datum.rank();
        // stack (g - 1) for all elements and compute the rational kernel rank
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for m in &self.elements {
            for i in 0..n {
                let mut row = vec![0i64; n];
                for j in 0..n {
                    row[j] = m[i * n + j] - if i == j { 1 } else { 0 };
                }
                rows.push(row);
            }
        }
        n - rank_of_rows(&mut rows)
    }

    /// Elliptic means no nonzero fixed vectors.
    pub fn is_elliptic(&self) -> bool {
        self.fixed_rank() == 0
    }
}

/// Row rank over the rationals by fraction-free elimination.
fn rank_of_rows(rows: &mut Vec<Vec<i64>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while col < ncols && rank < rows.len() {
        let pivot = (rank..rows.len()).find(|&r| rows[r][col] != 0);
        match pivot {
            None => {
                col += 1;
                continue;
            }
            Some(p) => {
                rows.swap(rank, p);
                let pv = rows[rank][col];
                for r in (rank + 1)..rows.len() {
                    let rv = rows[r][col];
                    if rv == 0 {
                        continue;
                    }
                    let g = gcd_i64(pv.unsigned_abs(), rv.unsigned_abs()) as i64;
                    let (a, b) = (pv / g, rv / g);
                    for c in col..ncols {
                        rows[r][c] = rows[r][c] * a - rows[rank][c] * b;
                    }
                }
                rank += 1;
                col += 1;
            }
        }
    }
    rank
}

fn gcd_i64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

/// Common constructions used across the test suites and the CLI.
impl GaloisRootAction {
    /// `A_1` with `Gamma = I = {+-1}`.
    pub fn a1_sign_action() -> Self {
        let datum = RootDatum::type_a_adjoint(1);
        let minus = vec![-1i64];
        Self::new(datum, vec![minus.clone()], vec![minus], None, true)
            .expect("A_1 sign action is valid")
    }

    /// Type `A_r` with inertia generated by a Coxeter element, optionally
    /// extended by `-1` (which is not in the Weyl group for `r > 1`).
    pub fn type_a_coxeter(r: usize, extend_by_minus_one: bool) -> Self {
        let datum = RootDatum::type_a_adjoint(r);
        let cox = coxeter_matrix(r);
        let mut gens = vec![cox.clone()];
        if extend_by_minus_one {
            let mut minus = vec![0i64; r * r];
            for i in 0..r {
                minus[i * r + i] = -1;
            }
            gens.push(minus);
        }
        Self::new(datum, gens, vec![cox], None, true).expect("Coxeter action is valid")
    }

    /// The `GL_n` torus action: inertia the coordinate shift `s`, Frobenius
    /// multiplication by `q` on the index set `Z/nZ`.
    pub fn gln(n: usize, q: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadParameters(String::from("need n >= 2")));
        }
        let datum = RootDatum::gl(n);
        let mut shift = vec![0i64; n * n];
        for j in 0..n {
            shift[((j + 1) % n) * n + j] = 1;
        }
        let mut frob = vec![0i64; n * n];
        for j in 0..n {
            frob[((q as usize * j) % n) * n + j] = 1;
        }
        Self::new(datum, vec![shift.clone(), frob.clone()], vec![shift], Some(frob), true)
    }
}

/// Matrix of the Coxeter element `s_1 s_2 ... s_r` of `A_r` on the root
/// lattice in the simple-root basis.
fn coxeter_matrix(r: usize) -> Vec<i64> {
    let cartan = |i: usize, j: usize| -> i64 {
        if i == j {
            2
        } else if i + 1 == j || j + 1 == i {
            -1
        } else {
            0
        }
    };
    let refl = |k: usize| -> Vec<i64> {
        // s_k(alpha_j) = alpha_j - C_{j k} alpha_k; columns are images
        let mut m = identity(r);
        for j in 0..r {
            m[k * r + j] -= cartan(j, k);
        }
        m
    };
    let mut cox = identity(r);
    for k in 0..r {
        cox = mat_mul(r, &cox, &refl(k));
    }
    cox
}
