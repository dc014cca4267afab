//! Dense exact matrices over the integers and the rationals.
//!
//! Everything here is small (at most a few thousand rows by 70 columns), so the
//! algorithms are the textbook ones: fraction-free elimination for determinants,
//! reduced row echelon form for ranks and kernels, and elementary operations for
//! the Smith normal form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero is not accepted here")]
    ZeroInput,
}

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rat>;

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.data[r * self.cols + c])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let cols = columns.len();
        Self::from_fn(rows, cols, |r, c| columns[c][r].clone())
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |r, c| rows[r][c].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq + Neg<Output = T>,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    let a = &self.data[i * self.cols + k];
                    if !a.is_zero() && !v[k].is_zero() {
                        acc = &acc + &(a * &v[k]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols, "sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols, "difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x * s)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// xᵀ·self·y
    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        let sy = self.mul_vec(y);
        dot(x, &sy)
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }
}

pub fn dot<T>(x: &[T], y: &[T]) -> T
where
    T: Zero + Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    assert_eq!(x.len(), y.len(), "dot length mismatch");
    x.iter().zip(y).fold(T::zero(), |acc, (a, b)| &acc + &(a * b))
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_from_int).collect()
}

/// Integer vector if every entry has denominator 1.
pub fn to_int_vec(v: &[Rat]) -> Option<Vec<Int>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

pub fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

impl IntMatrix {
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Matrix::from_vec(rows, cols, int_vec(data))
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(rat_from_int)
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }

    /// Inverse when it is again integral.
    pub fn inverse_int(&self) -> Option<IntMatrix> {
        let inv = self.to_rat().inverse().ok()?;
        inv.to_int()
    }

    pub fn reduce_mod(&self, n: &Int) -> IntMatrix {
        self.map(|x| x.mod_floor(n))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += f·row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &Int) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + f * self.get(src, c);
            self.set(dst, c, v);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &Int) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + f * self.get(r, src);
            self.set(r, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }
}

impl RatMatrix {
    pub fn to_int(&self) -> Option<IntMatrix> {
        let data = to_int_vec(&self.data)?;
        Some(Matrix::from_vec(self.rows, self.cols, data))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).recip();
            for j in c..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..a.cols {
                    let v = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut a = self.clone();
        let n = a.rows;
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c) / &piv;
                for j in c..n {
                    let v = a.get(i, j) - &f * a.get(c, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&RatMatrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    /// Some x with self·x = b, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let col = RatMatrix::from_columns(self.rows, &[b.to_vec()]);
        let (r, pivots) = self.hstack(&col).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solve self·X = B column by column.
    pub fn solve_matrix(&self, b: &RatMatrix) -> Option<RatMatrix> {
        let cols: Option<Vec<Vec<Rat>>> = (0..b.cols).map(|j| self.solve(&b.col(j))).collect();
        Some(RatMatrix::from_columns(self.cols, &cols?))
    }
}

/// Incrementally maintained row space in reduced echelon form.
///
/// Used to intersect many kernels without materializing the full stacked matrix.
#[derive(Clone, Debug)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<(usize, Vec<Rat>)>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert a row; returns true when it enlarged the space.
    pub fn insert(&mut self, row: &[Rat]) -> bool {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let mut v = row.to_vec();
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn insert_matrix(&mut self, m: &RatMatrix) {
        for r in 0..m.rows() {
            if self.rank() == self.cols {
                return;
            }
            self.insert(&m.row(r));
        }
    }

    /// Right kernel of the accumulated rows.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (p, r) in &self.rows {
                    v[*p] = -r[f].clone();
                }
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Diagonal entries d₁ | d₂ | … (length min(rows, cols)); zeros trail.
    pub invariant_factors: Vec<Int>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }

    /// Factors different from 1.
    pub fn nontrivial_factors(&self) -> Vec<Int> {
        self.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

/// Smith normal form by elementary operations with smallest-pivot selection.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let steps = m.min(n);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t).div_floor(d.get(t, t));
                if !q.is_zero() {
                    d.add_row(i, t, &-q.clone());
                    left.add_row(i, t, &-q);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(d.get(t, t));
                if !q.is_zero() {
                    d.add_col(j, t, &-q.clone());
                    right.add_col(j, t, &-q);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let piv = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &Int::one());
                    left.add_row(t, i, &Int::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    let invariant_factors = (0..steps).map(|i| d.get(i, i).clone()).collect();
    SmithForm { invariant_factors, left, right }
}

/// Whether q is the square of a rational, with a nonnegative root as witness.
pub fn is_rational_square(q: &Rat) -> Result<(bool, Option<Rat>), LinalgError> {
    if q.is_zero() {
        return Err(LinalgError::ZeroInput);
    }
    if q.is_negative() {
        return Ok((false, None));
    }
    let (num, den) = (q.numer(), q.denom());
    let (rn, rd) = (num.sqrt(), den.sqrt());
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        Ok((true, Some(Rat::new(rn, rd))))
    } else {
        Ok((false, None))
    }
}

pub fn to_i64(x: &Int) -> i64 {
    x.to_i64().expect("integer does not fit in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_snf(a: &IntMatrix) {
        let s = smith_normal_form(a);
        assert!(s.left.is_unimodular());
        assert!(s.right.is_unimodular());
        assert_eq!(s.left.mul(a).mul(&s.right), s.diagonal(a.rows(), a.cols()));
        for w in s.invariant_factors.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero() && w[1].is_multiple_of(&w[0]), "divisibility chain broken");
        }
        assert!(s.invariant_factors.iter().all(|f| !f.is_negative()));
    }

    #[test]
    fn snf_of_diag_2_3() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        check_snf(&a);
        assert_eq!(smith_normal_form(&a).invariant_factors, int_vec(&[1, 6]));
    }

    #[test]
    fn snf_of_identity() {
        let s = smith_normal_form(&IntMatrix::identity(4));
        assert_eq!(s.invariant_factors, int_vec(&[1, 1, 1, 1]));
    }

    #[test]
    fn snf_rectangular_and_zero() {
        check_snf(&IntMatrix::from_i64(2, 3, &[2, 4, 6, 4, 8, 12]));
        check_snf(&IntMatrix::zeros(3, 2));
        let s = smith_normal_form(&IntMatrix::from_i64(2, 3, &[2, 4, 6, 4, 8, 12]));
        assert_eq!(s.invariant_factors, int_vec(&[2, 0]));
    }

    #[test]
    fn bareiss_matches_rational_det() {
        let a = IntMatrix::from_i64(3, 3, &[0, 2, 1, 3, -1, 4, 5, 2, -2]);
        assert_eq!(rat_from_int(&a.det()), a.to_rat().det());
        assert_eq!(a.det(), int(63));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(RatMatrix::zeros(2, 2).kernel().len(), 2);
        let inv = IntMatrix::from_i64(3, 3, &[1, 1, 0, 0, 1, 1, 1, 0, 1]).to_rat();
        assert!(inv.kernel().is_empty());
    }

    #[test]
    fn inverse_round_trip() {
        let a = IntMatrix::from_i64(3, 3, &[2, 1, 0, 1, 1, 0, 0, 0, 3]).to_rat();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(RatMatrix::zeros(2, 2).inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn row_space_matches_rref() {
        let a = IntMatrix::from_i64(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1]).to_rat();
        let mut rs = RowSpace::new(4);
        rs.insert_matrix(&a);
        assert_eq!(rs.rank(), a.rank());
        for v in rs.kernel() {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rational_squares() {
        assert_eq!(is_rational_square(&rat(9, 4)).unwrap(), (true, Some(rat(3, 2))));
        assert_eq!(is_rational_square(&rat(2, 1)).unwrap(), (false, None));
        assert_eq!(is_rational_square(&rat(-4, 1)).unwrap(), (false, None));
        assert!(is_rational_square(&rat(0, 1)).is_err());
        let d4a2b2 = rat(6i64.pow(4) * 16 * 100, 1);
        assert_eq!(is_rational_square(&d4a2b2).unwrap().1, Some(rat(36 * 4 * 10, 1)));
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn snf_reproduces_diagonal(a in small_matrix(12)) {
            check_snf(&a);
        }

        #[test]
        fn kernel_plus_rank_is_cols(a in small_matrix(8)) {
            let r = a.to_rat();
            let k = r.kernel();
            prop_assert_eq!(k.len() + r.rank(), r.cols());
            for v in &k {
                prop_assert!(r.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn snf_product_is_abs_det(v in proptest::collection::vec(-9i64..=9, 16)) {
            let a = IntMatrix::from_i64(4, 4, &v);
            let s = smith_normal_form(&a);
            let prod = s.invariant_factors.iter().fold(Int::one(), |p, f| p * f);
            prop_assert_eq!(prod, a.det().abs());
        }
    }
}
