//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Smith-form transforms can grow far beyond any fixed width even for small
//! inputs (5 × 7 matrices with one-digit entries routinely pass 10³⁸ in
//! intermediate steps), so entries are [`BigInt`] throughout.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(&'static str),
    #[error("self-check failed: {0}")]
    Verification(&'static str),
}

type Result<T> = core::result::Result<T, LinalgError>;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from rows; `cols` is needed to describe `0 × cols` matrices.
    pub fn from_rows<T, R>(cols: usize, rows: &[R]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
        R: AsRef<[T]>,
    {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(LinalgError::Dimension("ragged rows"));
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64`, or `None` if one does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| i64::try_from(x).ok()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension("product"));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = a * &rhs[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        Ok(out)
    }

    /// Submatrix made of the given columns (all rows).
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Leading `k` columns.
    pub fn leading_columns(&self, k: usize) -> IntMatrix {
        let cols: Vec<usize> = (0..k).collect();
        self.select_columns(&cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = factor * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = factor * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    if a.rows != a.cols {
        return Err(LinalgError::Dimension("determinant of non-square matrix"));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                // exact by Sylvester's identity
                m[(i, j)] = num / &prev;
            }
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

/// Calls `f` with every increasing `k`-subset of `0..n` in lexicographic
/// order until it returns `false`.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// gcd of all maximal (`m × m`, `m` = row count) minors of `a`.
///
/// Returns 1 for `m = 0` (the empty minor), and 0 when `m` exceeds the column
/// count or every minor vanishes. Stops early once the gcd reaches 1.
pub fn minor_gcd(a: &IntMatrix) -> Result<BigInt> {
    let (m, n) = (a.rows, a.cols);
    if m == 0 {
        return Ok(BigInt::one());
    }
    if m > n {
        return Ok(BigInt::zero());
    }
    let mut g = BigInt::zero();
    let mut err = None;
    for_each_combination(n, m, |cols| {
        match determinant(&a.select_columns(cols)) {
            Ok(d) => g = g.gcd(&d),
            Err(e) => {
                err = Some(e);
                return false;
            }
        }
        !g.is_one()
    });
    match err {
        Some(e) => Err(e),
        None => Ok(g),
    }
}

/// `U · A · V = S` with `S` diagonal, nonnegative, and `s₁ | s₂ | …`;
/// `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `S` (length `min(m, n)`), zeros included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }

    /// Product of the first `k` invariant factors (0 if fewer than `k` exist);
    /// equals the gcd of all `k × k` minors.
    pub fn determinantal_divisor(&self, k: usize) -> BigInt {
        let f = self.invariant_factors();
        if k > f.len() {
            return BigInt::zero();
        }
        f[..k].iter().product()
    }
}

/// Smith normal form with transforms. The result is checked by
/// multiplication, and `|det U| = |det V| = 1` is confirmed, before returning.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithForm> {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero |entry| of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &s[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut changed = false;
            for i in t + 1..m {
                if !s[(i, t)].is_zero() {
                    let q = -(&s[(i, t)] / &s[(t, t)]);
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    if !s[(i, t)].is_zero() {
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..n {
                if !s[(t, j)].is_zero() {
                    let q = -(&s[(t, j)] / &s[(t, t)]);
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    if !s[(t, j)].is_zero() {
                        s.swap_cols(t, j);
                        v.swap_cols(t, j);
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // pivot must divide the whole trailing block
            let p = s[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    if u.mul(a)?.mul(&v)? != s {
        return Err(LinalgError::Verification("U·A·V != S"));
    }
    if !determinant(&u)?.abs().is_one() || !determinant(&v)?.abs().is_one() {
        return Err(LinalgError::Verification("transform not unimodular"));
    }
    Ok(SmithForm { s, u, v })
}

/// An integer `n × m` matrix `B` with `A·B = E_m`, if one exists.
///
/// One exists exactly when `m ≤ n` and the maximal minors of `A` have gcd 1.
/// Built from the Smith form as `B = V · [E_m; 0] · U`, then shortened by
/// subtracting integer combinations of the kernel columns of `V`, and
/// re-verified by multiplication.
pub fn right_inverse_certificate(a: &IntMatrix) -> Result<Option<IntMatrix>> {
    let (m, n) = (a.rows, a.cols);
    if m > n {
        return Ok(None);
    }
    if m == 0 {
        return Ok(Some(IntMatrix::zeros(n, 0)));
    }
    let snf = smith_normal_form(a)?;
    if snf.invariant_factors()[..m].iter().any(|d| !d.is_one()) {
        return Ok(None);
    }
    let mut b = snf.v.leading_columns(m).mul(&snf.u)?;
    // columns m..n of V span ker A
    let kernel = snf.v.select_columns(&(m..n).collect::<Vec<_>>());
    shorten_columns(&mut b, &kernel);
    if !a.mul(&b)?.is_identity() {
        return Err(LinalgError::Verification("A·B != E"));
    }
    Ok(Some(b))
}

fn norm2(m: &IntMatrix, col: usize) -> BigInt {
    (0..m.rows).map(|i| &m[(i, col)] * &m[(i, col)]).sum()
}

fn dot(a: &IntMatrix, ca: usize, b: &IntMatrix, cb: usize) -> BigInt {
    (0..a.rows).map(|i| &a[(i, ca)] * &b[(i, cb)]).sum()
}

/// Greedy size reduction of each column of `b` against the columns of
/// `kernel`: repeatedly subtract the rounded projection while it shrinks the
/// column. Leaves `A·b` unchanged.
fn shorten_columns(b: &mut IntMatrix, kernel: &IntMatrix) {
    let norms: Vec<BigInt> = (0..kernel.cols).map(|k| norm2(kernel, k)).collect();
    for c in 0..b.cols {
        // bounded: every accepted step strictly decreases the squared norm
        loop {
            let mut improved = false;
            for k in 0..kernel.cols {
                if norms[k].is_zero() {
                    continue;
                }
                let d = dot(b, c, kernel, k);
                // round(d / |k|²)
                let twice: BigInt = &d * 2u32 + &norms[k];
                let q = twice.div_floor(&(&norms[k] * 2u32));
                if q.is_zero() {
                    continue;
                }
                let before = norm2(b, c);
                let mut trial = b.clone();
                for i in 0..b.rows {
                    let v = &q * &kernel[(i, k)];
                    trial[(i, c)] -= v;
                }
                if norm2(&trial, c) < before {
                    *b = trial;
                    improved = true;
                }
            }
            if !improved {
                break;
            }
        }
    }
}
