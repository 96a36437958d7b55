//! Dense integer matrices with Smith and Hermite normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend(row.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[IntMatrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        IntMatrix { rows, cols, data }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut out = Self::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Coefficients of det(tI − m), constant term first (Faddeev–LeVerrier).
    pub fn charpoly(&self) -> Vec<BigInt> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let a: Vec<Vec<BigRational>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        // m_k = a·m_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(a·m_k)/k
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
        for k in 1..=n {
            let mut next = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = BigRational::zero();
                    for l in 0..n {
                        if !a[i][l].is_zero() && !m[l][j].is_zero() {
                            acc += &a[i][l] * &m[l][j];
                        }
                    }
                    next[i][j] = acc;
                }
                next[i][i] += &coeffs[n - k + 1];
            }
            m = next;
            let mut tr = BigRational::zero();
            for i in 0..n {
                for l in 0..n {
                    tr += &a[i][l] * &m[l][i];
                }
            }
            coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        }
        coeffs.into_iter().map(|c| c.to_integer()).collect()
    }

    pub fn rank(&self) -> usize {
        snf_diagonal(self).iter().filter(|d| !d.is_zero()).count()
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn from_row_vecs(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let r = rows.len();
        let data = rows.into_iter().flatten().collect();
        IntMatrix { rows: r, cols, data }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `u * m * v = diag(d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Invariant factors along the diagonal, `min(rows, cols)` of them.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Full decomposition including the inverses of both transforms.
#[derive(Clone, Debug)]
pub(crate) struct SnfFull {
    pub d: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub right: bool,
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let full = snf_full(m, Track { left: true, right: true });
    SnfResult { d: full.d, u: full.u.unwrap(), v: full.v.unwrap() }
}

/// Invariant factors only; skips transform bookkeeping.
pub fn snf_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    snf_full(m, Track::default()).d
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    v_inv: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn axpy_row(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    // rows[dst] -= q * rows[src]
    let (d, s) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn axpy_col(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    // col[dst] -= q * col[src]
    for r in rows.iter_mut() {
        if !r[src].is_zero() {
            let t = q * &r[src];
            r[dst] -= t;
        }
    }
}

fn swap_cols(rows: &mut [Vec<BigInt>], i: usize, j: usize) {
    for r in rows.iter_mut() {
        r.swap(i, j);
    }
}

impl Work {
    // row_dst -= q * row_src
    fn row_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        axpy_row(&mut self.a, dst, src, q);
        if let Some(u) = &mut self.u {
            axpy_row(u, dst, src, q);
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse: col_src += q * col_dst
            axpy_col(ui, src, dst, &-q);
        }
    }

    // col_dst -= q * col_src
    fn col_op(&mut self, dst: usize, src: usize, q: &BigInt) {
        axpy_col(&mut self.a, dst, src, q);
        if let Some(v) = &mut self.v {
            axpy_col(v, dst, src, q);
        }
        if let Some(vi) = &mut self.v_inv {
            // inverse: row_src += q * row_dst
            axpy_row(vi, src, dst, &-q);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            swap_cols(ui, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(v) = &mut self.v {
            swap_cols(v, i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for r in ui.iter_mut() {
                r[i] = -&r[i];
            }
        }
    }
}

pub(crate) fn snf_full(m: &IntMatrix, track: Track) -> SnfFull {
    let (r, c) = (m.rows, m.cols);
    let mut w = Work {
        a: m.to_rows(),
        u: track.left.then(|| identity_rows(r)),
        u_inv: track.left.then(|| identity_rows(r)),
        v: track.right.then(|| identity_rows(c)),
        v_inv: track.right.then(|| identity_rows(c)),
    };
    let n = r.min(c);
    let mut d = Vec::with_capacity(n);
    for t in 0..n {
        // minimal-absolute-value pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &w.a[i][j];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            d.extend(std::iter::repeat(BigInt::zero()).take(n - t));
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_op(i, t, &q);
                    if !w.a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..c {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_op(j, t, &q);
                    if !w.a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest remainder in row/column t into the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !w.a[i][j].is_multiple_of(&w.a[t][t]))
            });
            match offender {
                Some(i) => w.row_op(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        d.push(w.a[t][t].clone());
    }
    SnfFull {
        d,
        u: w.u.map(|x| IntMatrix::from_row_vecs(x, r)),
        u_inv: w.u_inv.map(|x| IntMatrix::from_row_vecs(x, r)),
        v: w.v.map(|x| IntMatrix::from_row_vecs(x, c)),
        v_inv: w.v_inv.map(|x| IntMatrix::from_row_vecs(x, c)),
    }
}

/// Row-style Hermite normal form: `u * m = h`, `h` upper echelon with positive
/// pivots and entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// `(row, column, value)` of each pivot.
    pub pivots: Vec<(usize, usize, BigInt)>,
}

impl HnfResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Index of the row lattice in `Z^cols`, or `None` when it is not of full rank.
    pub fn index(&self) -> Option<BigInt> {
        if self.pivots.len() < self.h.cols() {
            return None;
        }
        Some(self.pivots.iter().map(|(_, _, p)| p.clone()).product())
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HnfResult {
    let (r, c) = (m.rows, m.cols);
    let mut w = Work { a: m.to_rows(), u: Some(identity_rows(r)), u_inv: None, v: None, v_inv: None };
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..c {
        if p == r {
            break;
        }
        loop {
            let best = (p..r)
                .filter(|&i| !w.a[i][col].is_zero())
                .min_by(|&i, &j| w.a[i][col].abs().cmp(&w.a[j][col].abs()));
            let Some(bi) = best else { break };
            w.swap_rows(p, bi);
            let mut done = true;
            for i in p + 1..r {
                if !w.a[i][col].is_zero() {
                    let q = w.a[i][col].div_floor(&w.a[p][col]);
                    w.row_op(i, p, &q);
                    if !w.a[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if w.a[p][col].is_zero() {
            continue;
        }
        if w.a[p][col].is_negative() {
            w.negate_row(p);
        }
        for i in 0..p {
            let q = w.a[i][col].div_floor(&w.a[p][col]);
            if !q.is_zero() {
                w.row_op(i, p, &q);
            }
        }
        pivots.push((p, col, w.a[p][col].clone()));
        p += 1;
    }
    HnfResult {
        h: IntMatrix::from_row_vecs(w.a, c),
        u: IntMatrix::from_row_vecs(w.u.unwrap(), r),
        pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).charpoly(), b(&[-1, 0, 1]));
        let m = IntMatrix::from_rows(&[[2, 1, 0], [0, 3, 1], [1, 0, 1]]);
        let cp = m.charpoly();
        // constant term is (-1)^n det
        assert_eq!(cp[0], -m.determinant());
        assert_eq!(cp[2], BigInt::from(-6));
        assert_eq!(IntMatrix::zeros(0, 0).charpoly(), b(&[1]));
    }

    fn diag(m: &IntMatrix, d: &[BigInt]) -> IntMatrix {
        let mut out = IntMatrix::zeros(m.rows(), m.cols());
        for (i, x) in d.iter().enumerate() {
            out.set(i, i, x.clone());
        }
        out
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_small_example() {
        let m = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, ints(&[2, 4]));
        assert_eq!(s.u.mul(&m).mul(&s.v), diag(&m, &s.d));
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
    }

    #[test]
    fn snf_identity_and_zero() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)).d, ints(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 2)).d, ints(&[0, 0]));
        assert!(smith_normal_form(&IntMatrix::zeros(0, 3)).d.is_empty());
    }

    #[test]
    fn snf_inverses_tracked() {
        let m = IntMatrix::from_rows(&[[3, 5, 7], [2, -4, 6], [0, 1, 9], [4, 4, 4]]);
        let f = snf_full(&m, Track { left: true, right: true });
        let (u, ui, v, vi) = (f.u.unwrap(), f.u_inv.unwrap(), f.v.unwrap(), f.v_inv.unwrap());
        assert_eq!(u.mul(&ui), IntMatrix::identity(4));
        assert_eq!(v.mul(&vi), IntMatrix::identity(3));
        assert_eq!(u.mul(&m).mul(&v), diag(&m, &f.d));
    }

    #[test]
    fn hnf_examples() {
        let h = hermite_normal_form(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(h.index(), Some(BigInt::from(6)));
        let m = IntMatrix::from_rows(&[[1, 1], [0, 2]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h.index(), Some(BigInt::from(2)));
        assert_eq!(h.u.mul(&m), h.h);
        assert_eq!(hermite_normal_form(&IntMatrix::identity(4)).index(), Some(BigInt::one()));
        let deficient = hermite_normal_form(&IntMatrix::from_rows(&[[1, 2], [2, 4]]));
        assert_eq!(deficient.index(), None);
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = IntMatrix::from_rows(&[[0, 2, 1], [3, -1, 4], [5, 0, 2]]);
        // 0*(-2-0) - 2*(6-20) + 1*(0+5) = 33
        assert_eq!(m.determinant(), BigInt::from(33));
    }
}
