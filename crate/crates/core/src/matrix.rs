//! Dense matrices over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{KrwError, Result};
use crate::scalar::ExactScalar;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![ExactScalar::one(); n])
    }

    pub fn diagonal(diag: &[ExactScalar]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RationalMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(KrwError::InvalidParameter("ragged matrix rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
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

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ExactScalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_zero)
    }

    /// Largest `|r - c|` over nonzero entries.
    pub fn bandwidth(&self) -> usize {
        let mut bw = 0;
        for r in 0..self.rows {
            for c in 0..self.cols {
                if !self.get(r, c).is_zero() {
                    bw = bw.max(r.abs_diff(c));
                }
            }
        }
        bw
    }

    /// First nonzero off-diagonal entry, as `(row, col, value)`.
    pub fn first_off_diagonal(&self) -> Option<(usize, usize, &ExactScalar)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if r != c && !v.is_zero() {
                    return Some((r, c, v));
                }
            }
        }
        None
    }

    pub fn is_diagonal(&self) -> bool {
        self.first_off_diagonal().is_none()
    }

    pub fn diag(&self) -> Vec<ExactScalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// First entry where `self` and `other` differ, as `(row, col)`.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| self.get(r, c) != other.get(r, c))
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `D^-1 A D` for diagonal `D = diag(d)`; panics on a zero entry of `d`.
    pub fn conjugate_by_diagonal(&self, d: &[ExactScalar]) -> Self {
        assert!(self.is_square() && d.len() == self.rows);
        Self::from_fn(self.rows, self.cols, |r, c| {
            let v = self.get(r, c);
            if v.is_zero() {
                ExactScalar::zero()
            } else {
                v * &d[c] / &d[r]
            }
        })
    }

    /// Rank by Gaussian elimination over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].recip().expect("pivot is nonzero");
            for r in rank + 1..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                let (upper, lower) = m.split_at_mut(r);
                for (target, p) in lower[0][col..].iter_mut().zip(&upper[rank][col..]) {
                    *target -= &(&factor * p);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solves `(A - mu I) v = 0` for tridiagonal `A` by forward substitution
    /// from `v[0] = 1`, using rows `0..n-1` to generate `v[1..]`. The last row
    /// is not used to generate anything and must hold on its own; otherwise
    /// `mu` is not an eigenvalue.
    pub fn tridiagonal_eigenvector(&self, mu: &ExactScalar) -> Result<Vec<ExactScalar>> {
        if !self.is_square() || self.bandwidth() > 1 {
            return Err(KrwError::NotTridiagonal);
        }
        let n = self.rows;
        let mut v = vec![ExactScalar::zero(); n];
        if n == 0 {
            return Ok(v);
        }
        v[0] = ExactScalar::one();
        for r in 0..n - 1 {
            let sup = self.get(r, r + 1);
            if sup.is_zero() {
                return Err(KrwError::NotTridiagonal);
            }
            let mut acc = (mu - self.get(r, r)) * &v[r];
            if r > 0 {
                acc -= &(self.get(r, r - 1) * &v[r - 1]);
            }
            v[r + 1] = acc / sup;
        }
        let last = n - 1;
        let mut residual = (self.get(last, last) - mu) * &v[last];
        if last > 0 {
            residual += self.get(last, last - 1) * &v[last - 1];
        }
        if !residual.is_zero() {
            return Err(KrwError::NotAnEigenvalue(residual.to_string()));
        }
        Ok(v)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * rhs.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }
}
