//! Exact dense vectors and matrices over [`Rational`].
//!
//! Columns are first-class: a matrix is the ordered tuple of its columns
//! `(A^1, ..., A^n)`, and all independence tests are about column subsets.
//! Rank runs on a fraction-free (Bareiss) elimination over cleared integers;
//! inversion is exact Gauss-Jordan; the pseudo-inverse of a full-column-rank
//! `B` is `(B^T B)^-1 B^T`, which collapses to `B^-1` for square `B`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense exact vector.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector {
    entries: Vec<Rational>,
}

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        RationalVector {
            entries: vec![Rational::zero(); dim],
        }
    }

    pub fn ones(dim: usize) -> Self {
        RationalVector {
            entries: vec![Rational::one(); dim],
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        RationalVector {
            entries: values.iter().map(|&v| Rational::from_int(v)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: Rational) {
        self.entries[i] = value;
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.entries.iter().all(Rational::is_positive)
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot on mismatched dimensions");
        let mut acc = Rational::zero();
        for (a, b) in self.entries.iter().zip(other.entries.iter()) {
            acc += &(a * b);
        }
        acc
    }

    /// Squared Euclidean norm; exact, no square root.
    pub fn norm_squared(&self) -> Rational {
        let mut acc = Rational::zero();
        for e in &self.entries {
            acc += &e.squared();
        }
        acc
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), other.dim(), "add on mismatched dimensions");
        RationalVector {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        assert_eq!(self.dim(), other.dim(), "sub on mismatched dimensions");
        RationalVector {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> RationalVector {
        RationalVector {
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// `self -= factor * other`, allocation-light.
    pub fn sub_scaled_in_place(&mut self, factor: &Rational, other: &RationalVector) {
        assert_eq!(self.dim(), other.dim(), "axpy on mismatched dimensions");
        for (e, o) in self.entries.iter_mut().zip(other.entries.iter()) {
            *e -= &(o * factor);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled_in_place(&mut self, factor: &Rational, other: &RationalVector) {
        assert_eq!(self.dim(), other.dim(), "axpy on mismatched dimensions");
        for (e, o) in self.entries.iter_mut().zip(other.entries.iter()) {
            *e += &(o * factor);
        }
    }

    pub fn scale_in_place(&mut self, factor: &Rational) {
        for e in self.entries.iter_mut() {
            *e = &*e * factor;
        }
    }

    /// Entries at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> RationalVector {
        RationalVector {
            entries: indices.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.entries
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// Dense exact matrix, row-major storage, column-addressable.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Row-major construction; ragged rows are a `Schema` error.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::Schema(format!(
                    "ragged matrix: row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n_cols
                )));
            }
            entries.extend(row);
        }
        Ok(RationalMatrix {
            rows: n_rows,
            cols: n_cols,
            entries,
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    /// The column `A^j`.
    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    /// Submatrix formed by the columns in `indices`, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> RationalMatrix {
        let mut entries = Vec::with_capacity(self.rows * indices.len());
        for i in 0..self.rows {
            for &j in indices {
                entries.push(self.get(i, j).clone());
            }
        }
        RationalMatrix {
            rows: self.rows,
            cols: indices.len(),
            entries,
        }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul_matrix(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        RationalVector::new(
            (0..self.rows)
                .map(|i| {
                    let mut acc = Rational::zero();
                    for k in 0..self.cols {
                        acc += &(self.get(i, k) * v.get(k));
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Squared matrix norm: the sum of squared column norms, i.e. the sum of
    /// all squared entries.
    pub fn norm_squared(&self) -> Rational {
        let mut acc = Rational::zero();
        for e in &self.entries {
            acc += &e.squared();
        }
        acc
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Column-space dimension by fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to integers (the lcm of the row's denominators; row
/// scaling leaves rank unchanged), then eliminated with exact integer
/// divisions. Pivot rule: first nonzero entry in column order.
pub fn rank(matrix: &RationalMatrix) -> usize {
    if matrix.rows == 0 || matrix.cols == 0 {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = (0..matrix.rows)
        .map(|i| {
            let mut lcm = BigInt::one();
            for j in 0..matrix.cols {
                lcm = lcm.lcm(matrix.get(i, j).denom());
            }
            (0..matrix.cols)
                .map(|j| {
                    let q = matrix.get(i, j);
                    q.numer() * (&lcm / q.denom())
                })
                .collect()
        })
        .collect();

    let (rows, cols) = (matrix.rows, matrix.cols);
    let mut prev = BigInt::one();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        for i in pivot_row + 1..rows {
            for j in col + 1..cols {
                // Bareiss update; the division by the previous pivot is exact.
                let num = &m[pivot_row][col] * &m[i][j] - &m[i][col] * &m[pivot_row][j];
                m[i][j] = num / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[pivot_row][col].clone();
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    pivot_row
}

/// True iff the columns indexed by `indices` are linearly independent.
/// The empty set is independent.
pub fn columns_independent(matrix: &RationalMatrix, indices: &[usize]) -> bool {
    if indices.is_empty() {
        return true;
    }
    rank(&matrix.select_columns(indices)) == indices.len()
}

/// Exact inverse of a square matrix by Gauss-Jordan elimination.
pub fn invert(matrix: &RationalMatrix) -> Result<RationalMatrix> {
    if matrix.rows != matrix.cols {
        return Err(Error::DimensionMismatch(format!(
            "invert needs a square matrix, got {}x{}",
            matrix.rows, matrix.cols
        )));
    }
    let n = matrix.rows;
    let mut work = matrix.clone();
    let mut inv = RationalMatrix::identity(n);
    for col in 0..n {
        let Some(found) = (col..n).find(|&i| !work.get(i, col).is_zero()) else {
            return Err(Error::SingularMatrix);
        };
        if found != col {
            for j in 0..n {
                let a = work.get(col, j).clone();
                let b = work.get(found, j).clone();
                work.set(col, j, b);
                work.set(found, j, a);
                let a = inv.get(col, j).clone();
                let b = inv.get(found, j).clone();
                inv.set(col, j, b);
                inv.set(found, j, a);
            }
        }
        let pivot = work.get(col, col).clone();
        let pivot_inv = pivot.recip().expect("pivot is nonzero");
        for j in 0..n {
            work.set(col, j, work.get(col, j) * &pivot_inv);
            inv.set(col, j, inv.get(col, j) * &pivot_inv);
        }
        for i in 0..n {
            if i == col || work.get(i, col).is_zero() {
                continue;
            }
            let factor = work.get(i, col).clone();
            for j in 0..n {
                let w = work.get(i, j) - &(work.get(col, j) * &factor);
                work.set(i, j, w);
                let v = inv.get(i, j) - &(inv.get(col, j) * &factor);
                inv.set(i, j, v);
            }
        }
    }
    Ok(inv)
}

/// Pseudo-inverse `B^- = (B^T B)^-1 B^T` of a full-column-rank matrix.
///
/// Satisfies `B^- B = I` of size `cols(B)`; equals `invert(B)` when `B` is
/// square. Dependent columns are reported as such.
pub fn pseudo_inverse(matrix: &RationalMatrix) -> Result<RationalMatrix> {
    let bt = matrix.transpose();
    let btb = bt.mul_matrix(matrix);
    let btb_inv = invert(&btb).map_err(|e| match e {
        Error::SingularMatrix => Error::DependentColumns,
        other => other,
    })?;
    Ok(btb_inv.mul_matrix(&bt))
}
