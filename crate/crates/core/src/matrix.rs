//! Dense matrices over an exact field, with Gaussian elimination as the
//! single workhorse (RREF, kernels, inverses, determinants, linear solves).

use num_traits::{One, Zero};
use std::ops::{Div, Neg, Sub};

/// What the elimination code needs from a scalar. Satisfied by `Rat` and `CRat`.
pub trait FieldScalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
}

impl<T> FieldScalar for T where
    T: Clone
        + PartialEq
        + std::fmt::Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + Div<Output = Self>
{
}

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: FieldScalar> Mat<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
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

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn map<U: FieldScalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() + rhs.at(r, c).clone()
        })
    }

    pub fn sub(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() - rhs.at(r, c).clone()
        })
    }

    pub fn neg(&self) -> Mat<T> {
        self.map(|v| -v.clone())
    }

    pub fn scale(&self, s: &T) -> Mat<T> {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn mul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).clone();
                    out.set(r, c, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() && !self.at(r, c).is_zero() {
                        acc = acc + self.at(r, c).clone() * v[c].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for k in 0..self.rows {
            acc = acc + self.at(k, k).clone();
        }
        acc
    }

    pub fn hstack(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.rows, rhs.rows);
        Mat::from_fn(self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                rhs.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.cols);
        Mat::from_fn(self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows {
                self.at(r, c).clone()
            } else {
                rhs.at(r - self.rows, c).clone()
            }
        })
    }

    /// Reduced row echelon form with pivot bookkeeping.
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut det = T::one();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(pr) = (rank..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pr != rank {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, rank * m.cols + c);
                }
                det = -det;
            }
            let pivot = m.at(rank, col).clone();
            det = det * pivot.clone();
            for c in col..m.cols {
                let v = m.at(rank, c).clone() / pivot.clone();
                m.set(rank, c, v);
            }
            for r in 0..m.rows {
                if r == rank || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).clone() - factor.clone() * m.at(rank, c).clone();
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let det = if m.rows == m.cols {
            Some(if rank == m.rows { det } else { T::zero() })
        } else {
            None
        };
        Rref {
            mat: m,
            pivots,
            rank,
            det,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        self.rref().det.unwrap()
    }

    /// Basis of the right kernel `{ x : A x = 0 }`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let r = self.rref();
        let pivot_set: Vec<usize> = r.pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in pivot_set.iter().enumerate() {
                v[pc] = -r.mat.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Mat<T>> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n));
        let r = aug.rref();
        // invertible iff every pivot lies in the left block
        if r.pivots.iter().filter(|&&p| p < n).count() < n {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r.mat.at(i, j + n).clone()))
    }

    /// Solve `A X = B` column-wise; `None` when inconsistent. Free variables
    /// are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &Mat<T>) -> Option<Mat<T>> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let r = aug.rref();
        // Any pivot inside the rhs block signals inconsistency.
        if r.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for (row, &pc) in r.pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, r.mat.at(row, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &[T]) -> Option<Vec<T>> {
        let b = Mat::new(rhs.len(), 1, rhs.to_vec());
        self.solve(&b).map(|x| x.col(0))
    }
}

pub struct Rref<T> {
    pub mat: Mat<T>,
    pub pivots: Vec<usize>,
    pub rank: usize,
    pub det: Option<T>,
}
