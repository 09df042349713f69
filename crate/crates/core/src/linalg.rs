//! Dense matrices with entries in a finite field.
//!
//! Entries are plain [`Elem`]s and every operation takes the field as an
//! argument. Matrices over the subfield F are stored with their entries
//! embedded in K, so the same routines serve both.

use alloc::vec;
use alloc::vec::Vec;

use crate::ff::{Elem, Gf};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<Elem>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, gf: &Gf) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, gf.add(cur, gf.mul(a, other.get(k, j))));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem], gf: &Gf) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| gf.add(acc, gf.mul(a, b)))
            })
            .collect()
    }

    pub fn scale(&self, c: Elem, gf: &Gf) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| gf.mul(c, x)).collect() }
    }

    /// Determinant by fraction-free (Bareiss) elimination. The pivot is the
    /// first nonzero entry of the current column in row order.
    pub fn det(&self, gf: &Gf) -> Elem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Elem::ONE;
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = Elem::ONE;
        for k in 0..n - 1 {
            let Some(pivot) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
                return Elem::ZERO;
            };
            if pivot != k {
                a.swap_rows(pivot, k);
                negate = !negate;
            }
            let akk = a.get(k, k);
            let prev_inv = gf.inv(prev).expect("Bareiss pivot is nonzero");
            for i in k + 1..n {
                let aik = a.get(i, k);
                for j in k + 1..n {
                    let num = gf.sub(gf.mul(akk, a.get(i, j)), gf.mul(aik, a.get(k, j)));
                    a.set(i, j, gf.mul(num, prev_inv));
                }
                a.set(i, k, Elem::ZERO);
            }
            prev = akk;
        }
        let d = a.get(n - 1, n - 1);
        if negate {
            gf.neg(d)
        } else {
            d
        }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self, gf: &Gf) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = gf.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let x = self.get(r, j);
                self.set(r, j, gf.mul(x, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let x = gf.sub(self.get(i, j), gf.mul(factor, self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, gf: &Gf) -> usize {
        self.clone().rref(gf).len()
    }

    pub fn inverse(&self, gf: &Gf) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Elem::ONE);
        }
        let pivots = aug.rref(gf);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Elem], gf: &Gf) -> Option<Vec<Elem>> {
        assert!(self.is_square(), "solve needs a square system");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n, b[i]);
        }
        let pivots = aug.rref(gf);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some((0..n).map(|i| aug.get(i, n)).collect())
    }

    /// Solves `self * x = b` for a system with at least as many equations as
    /// unknowns; `None` unless it is consistent with exactly one solution.
    pub fn solve_unique(&self, b: &[Elem], gf: &Gf) -> Option<Vec<Elem>> {
        let n = self.cols;
        let mut aug = Matrix::zeros(self.rows, n + 1);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n, b[i]);
        }
        let pivots = aug.rref(gf);
        if pivots.len() != n || pivots.last().is_some_and(|&c| c != n - 1) {
            return None;
        }
        Some((0..n).map(|i| aug.get(i, n)).collect())
    }
}
