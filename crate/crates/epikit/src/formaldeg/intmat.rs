//! Dense integer matrices with the exact kernels, images, determinants,
//! and Smith normal forms needed for lattice invariants. Sizes here are
//! tiny (rank at most a dozen), so clarity wins over asymptotics.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<i128>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += v * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.a.len() {
            out.a[i] -= other.a[i];
        }
        out
    }

    /// Stack side by side.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Stack on top of each other.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        let mut out = IntMat::zero(self.rows + other.rows, self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out[(i, j)] = self[(i, j)];
            }
            for i in 0..other.rows {
                out[(self.rows + i, j)] = other[(i, j)];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&v| v == 0)
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[(k, k)] == 0 {
                match (k + 1..n).find(|&i| m[(i, k)] != 0) {
                    None => return 0,
                    Some(p) => {
                        for j in 0..n {
                            let tmp = m[(k, j)];
                            m[(k, j)] = m[(p, j)];
                            m[(p, j)] = tmp;
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[(i, j)] = (m[(k, k)] * m[(i, j)] - m[(i, k)] * m[(k, j)]) / prev;
                }
                m[(i, k)] = 0;
            }
            prev = m[(k, k)];
        }
        sign * m[(n - 1, n - 1)]
    }
}

impl core::ops::Index<(usize, usize)> for IntMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.a[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.a[i * self.cols + j]
    }
}

/// Smith invariant factors `d_1 | d_2 | ...` of an integer matrix
/// (nonnegative, zeros trailing).
pub fn smith_invariants(mat: &IntMat) -> Vec<i128> {
    smith_with_col_transform(mat).0
}

/// Eliminate at step `k`: pivot into place and clear its row and column,
/// tracking column operations in `q`.
fn eliminate_step(m: &mut IntMat, q: &mut IntMat, k: usize) -> bool {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot: Option<(usize, usize)> = None;
    for i in k..rows {
        for j in k..cols {
            if m[(i, j)] != 0
                && pivot.map_or(true, |(pi, pj)| m[(i, j)].abs() < m[(pi, pj)].abs())
            {
                pivot = Some((i, j));
            }
        }
    }
    let Some((pi, pj)) = pivot else { return false };
    swap_rows(m, k, pi);
    swap_cols(m, Some(q), k, pj);
    loop {
        let mut done = true;
        for i in k + 1..rows {
            let f = m[(i, k)].div_euclid(m[(k, k)]);
            if f != 0 {
                row_axpy(m, i, k, -f);
            }
            if m[(i, k)] != 0 {
                swap_rows(m, k, i);
                done = false;
            }
        }
        for j in k + 1..cols {
            let f = m[(k, j)].div_euclid(m[(k, k)]);
            if f != 0 {
                col_axpy(m, Some(q), j, k, -f);
            }
            if m[(k, j)] != 0 {
                swap_cols(m, Some(q), k, j);
                done = false;
            }
        }
        if done {
            return true;
        }
    }
}

/// Diagonal (unsorted beyond the divisibility normalization, zeros
/// trailing) together with the accumulated column transform `Q`, so that
/// `mat * Q` equals the diagonal up to row operations; in particular the
/// columns of `Q` at zero diagonal positions (and beyond the diagonal)
/// span the kernel of `mat`.
fn smith_with_col_transform(mat: &IntMat) -> (Vec<i128>, IntMat) {
    let mut m = mat.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut q = IntMat::identity(cols);
    let steps = rows.min(cols);
    let mut k = 0;
    while k < steps {
        if !eliminate_step(&mut m, &mut q, k) {
            break;
        }
        k += 1;
    }
    // enforce the divisibility chain on the nonzero diagonal
    'outer: loop {
        for k in 0..steps.saturating_sub(1) {
            let (a, b) = (m[(k, k)], m[(k + 1, k + 1)]);
            if a != 0 && b != 0 && b % a != 0 {
                // fold the next entry into column k and re-eliminate
                col_axpy(&mut m, Some(&mut q), k, k + 1, 1);
                let mut kk = k;
                while kk < steps {
                    if !eliminate_step(&mut m, &mut q, kk) {
                        break;
                    }
                    kk += 1;
                }
                continue 'outer;
            }
        }
        break;
    }
    let d: Vec<i128> = (0..steps).map(|i| m[(i, i)].abs()).collect();
    (d, q)
}

fn swap_rows(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        let t = m[(a, j)];
        m[(a, j)] = m[(b, j)];
        m[(b, j)] = t;
    }
}

fn swap_cols(m: &mut IntMat, q: Option<&mut IntMat>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        let t = m[(i, a)];
        m[(i, a)] = m[(i, b)];
        m[(i, b)] = t;
    }
    if let Some(q) = q {
        for i in 0..q.rows {
            let t = q[(i, a)];
            q[(i, a)] = q[(i, b)];
            q[(i, b)] = t;
        }
    }
}

fn row_axpy(m: &mut IntMat, dst: usize, src: usize, f: i128) {
    for j in 0..m.cols {
        m[(dst, j)] += f * m[(src, j)];
    }
}

fn col_axpy(m: &mut IntMat, q: Option<&mut IntMat>, dst: usize, src: usize, f: i128) {
    for i in 0..m.rows {
        m[(i, dst)] += f * m[(i, src)];
    }
    if let Some(q) = q {
        for i in 0..q.rows {
            q[(i, dst)] += f * q[(i, src)];
        }
    }
}

/// Basis of the integer kernel `{x : M x = 0}` as matrix columns.
pub fn kernel_basis(mat: &IntMat) -> IntMat {
    let (d, q) = smith_with_col_transform(mat);
    let steps = mat.rows.min(mat.cols);
    let cols: Vec<usize> = (0..mat.cols)
        .filter(|&j| j >= steps || d[j] == 0)
        .collect();
    let mut out = IntMat::zero(mat.cols, cols.len());
    for (jj, &j) in cols.iter().enumerate() {
        for i in 0..mat.cols {
            out[(i, jj)] = q[(i, j)];
        }
    }
    for j in 0..out.cols {
        let v = out.col(j);
        assert!(mat.mul_vec(&v).iter().all(|&x| x == 0), "kernel column check");
    }
    out
}

/// Basis of the column lattice (image) of `mat`, as matrix columns, by
/// column-only Hermite reduction.
pub fn column_lattice_basis(mat: &IntMat) -> IntMat {
    let mut m = mat.clone();
    let rows = m.rows;
    let cols = m.cols;
    let mut pivot_col = 0usize;
    for r in 0..rows {
        if pivot_col >= cols {
            break;
        }
        loop {
            // find column with the smallest nonzero entry in row r
            let mut best: Option<usize> = None;
            for j in pivot_col..cols {
                if m[(r, j)] != 0
                    && best.map_or(true, |b| m[(r, j)].abs() < m[(r, b)].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            swap_cols(&mut m, None, pivot_col, b);
            let mut clean = true;
            for j in pivot_col + 1..cols {
                let f = m[(r, j)].div_euclid(m[(r, pivot_col)]);
                if f != 0 {
                    col_axpy(&mut m, None, j, pivot_col, -f);
                }
                if m[(r, j)] != 0 {
                    clean = false;
                }
            }
            if clean {
                pivot_col += 1;
                break;
            }
        }
    }
    // keep nonzero columns
    let keep: Vec<usize> = (0..cols).filter(|&j| (0..rows).any(|i| m[(i, j)] != 0)).collect();
    let mut out = IntMat::zero(rows, keep.len());
    for (jj, &j) in keep.iter().enumerate() {
        for i in 0..rows {
            out[(i, jj)] = m[(i, j)];
        }
    }
    out
}

/// Coordinates of the columns of `target` in the column basis `basis`
/// (rational, exact); `None` when a column is outside the span.
pub fn rational_coordinates(basis: &IntMat, target: &IntMat) -> Option<Vec<Vec<Ratio<i128>>>> {
    assert_eq!(basis.rows, target.rows);
    let rows = basis.rows;
    let bc = basis.cols;
    // Gaussian elimination over the rationals on [basis | target]
    let mut aug: Vec<Vec<Ratio<i128>>> = (0..rows)
        .map(|i| {
            (0..bc + target.cols)
                .map(|j| {
                    if j < bc {
                        Ratio::from_integer(basis[(i, j)])
                    } else {
                        Ratio::from_integer(target[(i, j - bc)])
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..bc {
        let Some(p) = (row..rows).find(|&i| aug[i][col] != Ratio::from_integer(0)) else {
            continue;
        };
        aug.swap(row, p);
        let pivval = aug[row][col];
        for v in aug[row].iter_mut() {
            *v /= pivval;
        }
        for i in 0..rows {
            if i != row && aug[i][col] != Ratio::from_integer(0) {
                let f = aug[i][col];
                for j in 0..aug[i].len() {
                    let sub = f * aug[row][j];
                    aug[i][j] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    // rows below `row` must be zero on the target side, else inconsistent
    for i in row..rows {
        for j in bc..bc + target.cols {
            if aug[i][j] != Ratio::from_integer(0) {
                return None;
            }
        }
    }
    let mut coords = vec![vec![Ratio::from_integer(0); target.cols]; bc];
    for (r, &col) in pivots.iter().enumerate() {
        for t in 0..target.cols {
            coords[col][t] = aug[r][bc + t];
        }
    }
    Some(coords)
}

/// Index `[big : small]` of one full-rank sublattice in another, given by
/// basis columns; `None` when ranks differ or containment fails.
pub fn lattice_index(big: &IntMat, small: &IntMat) -> Option<u128> {
    if big.cols != small.cols {
        return None;
    }
    let coords = rational_coordinates(big, small)?;
    let n = big.cols;
    // determinant of the rational coordinate matrix
    let mut m: Vec<Vec<Ratio<i128>>> = (0..n).map(|i| coords[i].clone()).collect();
    let mut det = Ratio::from_integer(1i128);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != Ratio::from_integer(0)) else {
            return None;
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= m[k][k];
        let pivval = m[k][k];
        for i in k + 1..n {
            if m[i][k] != Ratio::from_integer(0) {
                let f = m[i][k] / pivval;
                for j in k..n {
                    let sub = f * m[k][j];
                    m[i][j] -= sub;
                }
            }
        }
    }
    if !det.is_integer() {
        return None;
    }
    Some(det.to_integer().unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_pinned_examples() {
        let m = IntMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_invariants(&m), vec![1, 6]);
        assert_eq!(smith_invariants(&IntMat::identity(4)), vec![1, 1, 1, 1]);
        // stacked relations (2,0), (0,2), (1,-1) on Z^2: quotient order 2
        let m = IntMat::from_rows(&[vec![2, 0], vec![0, 2], vec![1, -1]]);
        let d = smith_invariants(&m);
        let order: i128 = d.iter().filter(|&&x| x != 0).product();
        assert_eq!(order, 2);
    }

    #[test]
    fn smith_divisibility_chain_random() {
        let mats = [
            IntMat::from_rows(&[vec![-6, 111, -36, 6], vec![5, -672, 210, 74], vec![0, -255, 81, 24], vec![-7, 255, -81, -10]]),
            IntMat::from_rows(&[vec![6, 4], vec![2, 8]]),
            IntMat::from_rows(&[vec![0, 0], vec![0, 0]]),
        ];
        for m in &mats {
            let d = smith_invariants(m);
            for w in d.windows(2) {
                if w[0] != 0 && w[1] != 0 {
                    assert_eq!(w[1] % w[0], 0, "divisibility in {d:?}");
                }
            }
        }
        // the classic 4x4 with invariants 1, 3, 21, 0
        let d = smith_invariants(&mats[0]);
        assert_eq!(d, vec![1, 3, 21, 0]);
    }

    #[test]
    fn kernel_and_image() {
        let m = IntMat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols, 2);
        let img = column_lattice_basis(&m);
        assert_eq!(img.cols, 1);
        // index of 2Z^2 in Z^2 is 4
        let big = IntMat::identity(2);
        let small = IntMat::from_rows(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(lattice_index(&big, &small), Some(4));
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMat::identity(3).det(), 1);
        let m = IntMat::from_rows(&[vec![-1, -3], vec![3, -1]]);
        assert_eq!(m.det(), 10);
        let sing = IntMat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.det(), 0);
        assert_eq!(IntMat::zero(0, 0).det(), 1);
    }
}
