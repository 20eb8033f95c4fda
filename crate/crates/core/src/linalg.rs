//! Dense matrices over the rationals with Gaussian elimination.
//!
//! Pivoting is always "first nonzero entry scanning down the current column",
//! so every derived basis (pivot columns, kernels, complements) is a
//! deterministic function of the input matrix.

use num_traits::{One, Zero};
use std::fmt;

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(crate::rational::render).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rational::int(v)).collect())
                .collect(),
            cols,
        )
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
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

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead);
            let inv = m[(lead, c)].recip();
            for j in c..m.cols {
                let v = &m[(lead, j)] * &inv;
                m[(lead, j)] = v;
            }
            for r in 0..m.rows {
                if r != lead && !m[(r, c)].is_zero() {
                    let f = m[(r, c)].clone();
                    for j in c..m.cols {
                        let delta = &f * &m[(lead, j)];
                        if !delta.is_zero() {
                            m[(r, j)] -= delta;
                        }
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &pivot;
                for j in c..n {
                    let delta = &f * &m[(c, j)];
                    m[(r, j)] -= delta;
                }
            }
        }
        det
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert!(self.is_square());
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n)] = b[r].clone();
        }
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return None;
        }
        Some((0..n).map(|r| reduced[(r, n)].clone()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// Greedily extends `start` (assumed independent) by vectors from `candidates`
/// that increase the span, returning only the vectors that were added.
pub fn extend_basis(
    start: &[Vec<Rational>],
    candidates: impl IntoIterator<Item = Vec<Rational>>,
    dim: usize,
) -> Vec<Vec<Rational>> {
    let mut current: Vec<Vec<Rational>> = start.to_vec();
    let mut rank = Matrix::from_columns(&current, dim).rank();
    let mut added = Vec::new();
    for cand in candidates {
        if rank == dim {
            break;
        }
        current.push(cand.clone());
        let r = Matrix::from_columns(&current, dim).rank();
        if r > rank {
            rank = r;
            added.push(cand);
        } else {
            current.pop();
        }
    }
    added
}

pub fn unit_vector(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::one();
    v
}
