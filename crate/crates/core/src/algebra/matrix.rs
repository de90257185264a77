//! Dense row-major matrices and Gaussian elimination over a [`Field`].
//!
//! Pivoting is strictly left to right, taking the first nonzero entry in each
//! column, so echelon forms and kernel bases are canonical for a given input.

use std::ops::{Index, IndexMut};

use super::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_elem(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, entries: vec![value; rows * cols] }
    }

    /// Builds a matrix from row-major entries. Panics on a length mismatch.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { rows, cols, entries }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>], zero: T) -> Self {
        let mut m = Matrix::from_elem(rows, columns.len(), zero);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<S>(&self, f: impl FnMut(&T) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.entries.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }
}

/// Row-reduced echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

/// Brings `m` to echelon form in place and returns the pivot columns.
/// With `reduce` set, pivots are normalized to one and cleared above as well.
fn eliminate<F: Field>(field: &F, m: &mut Matrix<F::Elem>, reduce: bool) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = field.inv(&m[(r, c)]);
        if reduce {
            for j in c..cols {
                m[(r, j)] = field.mul(&m[(r, j)], &inv);
            }
        }
        let pivot_row: Vec<F::Elem> = m.row(r)[c..].to_vec();
        let targets: Box<dyn Iterator<Item = usize>> =
            if reduce { Box::new((0..rows).filter(|&i| i != r)) } else { Box::new(r + 1..rows) };
        for i in targets {
            if field.is_zero(&m[(i, c)]) {
                continue;
            }
            let factor = if reduce { m[(i, c)].clone() } else { field.mul(&m[(i, c)], &inv) };
            for (off, pv) in pivot_row.iter().enumerate() {
                if field.is_zero(pv) {
                    continue;
                }
                let j = c + off;
                m[(i, j)] = field.sub(&m[(i, j)], &field.mul(&factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of `m` over `field`.
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    eliminate(field, &mut work, false).len()
}

/// Reduced row echelon form of `m`.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut reduced = m.clone();
    let pivots = eliminate(field, &mut reduced, true);
    Echelon { reduced, pivots }
}

/// Canonical basis of the right kernel `{v : m v = 0}`.
///
/// One vector per non-pivot column `j` of the reduced echelon form: `v_j = 1`,
/// other free coordinates zero, pivot coordinates read off the reduced rows.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let Echelon { reduced, pivots } = rref(field, m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let basis: Vec<Vec<F::Elem>> = (0..m.cols)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut v = vec![field.zero(); m.cols];
            v[j] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&reduced[(r, j)]);
            }
            v
        })
        .collect();
    debug_assert_eq!(basis.len() + pivots.len(), m.cols);
    basis
}

/// `m * v`.
pub fn apply<F: Field>(field: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(v.len(), m.cols);
    (0..m.rows)
        .map(|i| {
            m.row(i).iter().zip(v).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
        })
        .collect()
}
