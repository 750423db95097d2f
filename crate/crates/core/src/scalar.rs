//! Exact scalar rings and small dense matrices over them.
//!
//! Everything in this crate is exact. Two families of scalar show up:
//! the coefficient rings of Laurent polynomials (integers of any width,
//! big integers) and the entry rings of the reflection representations
//! (integers for crystallographic types, the golden integers `Z[φ]` for H3).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Ring operations needed by Laurent polynomials and the algebras built on them.
///
/// Blanket-implemented for every type with the required operators, so `i64`,
/// `i128` and `num_bigint::BigInt` all qualify.
pub trait Coefficient:
    Clone
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
{
    fn is_nonnegative(&self) -> bool {
        *self >= Self::zero()
    }
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + PartialOrd
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
{
}

/// Entry ring of an exact matrix: a commutative integral domain with hashing.
pub trait Scalar:
    Clone
    + Eq
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + fmt::Debug
    + Send
    + Sync
{
}

impl<T> Scalar for T where
    T: Clone
        + Eq
        + Hash
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + fmt::Debug
        + Send
        + Sync
{
}

/// An element `a + bφ` of `Z[φ]` with `φ² = φ + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl GoldenInt {
    pub const PHI: GoldenInt = GoldenInt { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        GoldenInt { a, b }
    }

    /// Galois conjugate, `φ ↦ 1 − φ`.
    pub fn conjugate(self) -> Self {
        GoldenInt::new(self.a + self.b, -self.b)
    }

    /// Field norm `x · conj(x)`, an ordinary integer.
    pub fn norm(self) -> i64 {
        self.a * self.a + self.a * self.b - self.b * self.b
    }
}

impl fmt::Debug for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}φ"),
            (a, b) if b < 0 => write!(f, "{a}-{}φ", -b),
            (a, b) => write!(f, "{a}+{b}φ"),
        }
    }
}

impl Add for GoldenInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GoldenInt::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for GoldenInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GoldenInt::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for GoldenInt {
    type Output = Self;
    fn neg(self) -> Self {
        GoldenInt::new(-self.a, -self.b)
    }
}

impl Mul for GoldenInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let bd = self.b * o.b;
        GoldenInt::new(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)
    }
}

impl Zero for GoldenInt {
    fn zero() -> Self {
        GoldenInt::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl One for GoldenInt {
    fn one() -> Self {
        GoldenInt::new(1, 0)
    }
}

/// Dense row-major matrix over an exact scalar ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cell = &mut out[(i, j)];
                    *cell = cell.clone() + prod;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    /// Rank over the fraction field, by division-free elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<S>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot_row = m[rank].clone();
            let pivot = pivot_row[col].clone();
            for row in m.iter_mut().skip(rank + 1) {
                let f = row[col].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() * pivot.clone() - f.clone() * p.clone();
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant by cofactor expansion; intended for the small matrices
    /// of reflection representations.
    pub fn determinant(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.minor_det(0, &idx)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> S {
        if cols.is_empty() {
            return S::one();
        }
        let mut acc = S::zero();
        for (k, &c) in cols.iter().enumerate() {
            let a = &self[(row, c)];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.clone() * self.minor_det(row + 1, &rest);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl AddAssign for GoldenInt {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}
