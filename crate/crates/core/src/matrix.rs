//! Dense row-major matrices, generic over the scalar type.
//!
//! The integer routines (Bareiss determinant, Smith form in [`crate::snf`])
//! require `num_integer::Integer`; the field routines (rank, kernel, solve)
//! require exact division and are used with rationals. No floating point
//! enters any of these paths.

use num_integer::Integer;
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|row| row.iter().cloned()).collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hcat row counts {} vs {}",
                self.rows, other.rows
            )));
        }
        let mut data = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self.at(r, k).clone() * other.at(k, c).clone();
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "mul_vec {}x{} by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect())
    }

    pub fn scale(&self, factor: &T) -> Self {
        self.map(|x| x.clone() * factor.clone())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Intermediate values stay in the scalar ring: every division performed is
/// exact, so this works over the integers without ever forming a fraction.
pub fn determinant<T: Integer + Clone>(a: &Matrix<T>) -> Result<T> {
    if a.rows != a.cols {
        return Err(Error::NonSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    if n == 0 {
        return Ok(T::one());
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m.at(k, k).is_zero() {
            match (k + 1..n).find(|&r| !m.at(r, k).is_zero()) {
                Some(r) => {
                    m.swap_rows(k, r);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m.at(i, j).clone() * m.at(k, k).clone()
                    - m.at(i, k).clone() * m.at(k, j).clone();
                m.set(i, j, num / prev.clone());
            }
            m.set(i, k, T::zero());
        }
        prev = m.at(k, k).clone();
    }
    let det = m.at(n - 1, n - 1).clone();
    Ok(if negate { T::zero() - det } else { det })
}

/// Reduced row echelon form over a field; returns the pivot columns.
pub fn rref<T: Clone + Num>(m: &mut Matrix<T>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut lead = 0usize;
    for col in 0..m.cols {
        if lead >= m.rows {
            break;
        }
        let Some(piv) = (lead..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(lead, piv);
        let inv = T::one() / m.at(lead, col).clone();
        for c in col..m.cols {
            let v = m.at(lead, c).clone() * inv.clone();
            m.set(lead, c, v);
        }
        for r in 0..m.rows {
            if r != lead && !m.at(r, col).is_zero() {
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).clone() - factor.clone() * m.at(lead, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    pivots
}

/// Exact rank over a field.
pub fn rank<T: Clone + Num>(m: &Matrix<T>) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Basis of the exact right kernel; empty when the kernel is trivial.
pub fn nullspace<T: Clone + Num + Signed>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let mut w = m.clone();
    let pivots = rref(&mut w);
    let pivot_row: std::collections::BTreeMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivot_row.contains_key(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); m.cols];
            v[fc] = T::one();
            for (&pc, &pr) in &pivot_row {
                v[pc] = -w.at(pr, fc).clone();
            }
            v
        })
        .collect()
}

/// Unique solution of a square nonsingular system `A x = b` over a field.
pub fn solve_unique<T: Clone + Num + Signed>(a: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if a.rows != a.cols {
        return Err(Error::NonSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "solve {}x{} with rhs length {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let rhs = Matrix::from_columns(&[b.to_vec()]);
    let mut aug = a.hcat(&rhs)?;
    let pivots = rref(&mut aug);
    if pivots.len() < a.cols || pivots.iter().any(|&c| c >= a.cols) {
        return Ok(None);
    }
    Ok(Some((0..a.cols).map(|r| aug.at(r, a.cols).clone()).collect()))
}
