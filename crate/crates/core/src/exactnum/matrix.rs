use std::fmt;

use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// Sparse exact matrix stored by columns: column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        Self { rows: n, cols: (0..n).map(|i| SparseVec::single(i, c.clone())).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < rows)));
        Self { rows, cols }
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| SparseVec::from_pairs((0..nrows).map(|i| (i, rows[i][j].clone()))))
            .collect();
        Self { rows: nrows, cols }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, Scalar)>>(rows: usize, cols: usize, t: I) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in t {
            buckets[c].push((r, v));
        }
        Self { rows, cols: buckets.into_iter().map(SparseVec::from_pairs).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.cols[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    /// Some nonzero entry `(row, col, value)`, used as a witness.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Scalar)> {
        self.cols
            .iter()
            .enumerate()
            .find_map(|(j, c)| c.leading().map(|(i, v)| (i, j, v.clone())))
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (i, j, v)))
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.add_scaled(c, &self.cols[j]);
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.rows, "matrix product shape");
        Matrix { rows: self.rows, cols: other.cols.iter().map(|c| self.mul_vec(c)).collect() }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()), "matrix sum shape");
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            a.add_scaled(c, b);
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other);
        out
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols.iter().map(|col| col.scaled(c)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_triplets(self.ncols(), self.rows, self.triplets().map(|(i, j, v)| (j, i, v.clone())))
    }

    /// Rows as sparse vectors indexed by column.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (i, j, v) in self.triplets() {
            rows[i].push((j, v.clone()));
        }
        rows.into_iter().map(SparseVec::from_pairs).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols()]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    /// Supercommutator `self·other − sign·other·self`.
    pub fn supercommutator(&self, other: &Matrix, sign: i32) -> Matrix {
        let ab = self.mul(other);
        let ba = other.mul(self);
        let mut out = ab;
        out.add_scaled(&Scalar::from_integer((-sign).into()), &ba);
        out
    }

    /// Smallest `k ≥ 1` with `self^k = 0`, or `None` if no power up to the dimension vanishes.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert_eq!(self.rows, self.ncols(), "square matrix");
        let n = self.rows;
        if self.is_zero() {
            return Some(1);
        }
        let mut power = self.clone();
        for k in 2..=n.max(1) {
            power = self.mul(&power);
            if power.is_zero() {
                return Some(k);
            }
        }
        None
    }

    pub fn check_square(&self, n: usize) -> Result<()> {
        if self.rows != n || self.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.rows.max(self.ncols()) });
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(super::scalar::format_scalar).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form and rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let ncols = m.ncols();
    let mut rows = m.row_vectors();
    let mut pivot_rows: Vec<SparseVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..ncols {
        let Some(pos) = rows.iter().position(|r| r.leading().is_some_and(|(i, _)| i == col)) else {
            continue;
        };
        let mut row = rows.swap_remove(pos);
        let inv = row.get(col).recip();
        row = row.scaled(&inv);
        for other in rows.iter_mut() {
            if let Some((i, v)) = other.leading() {
                if i == col {
                    let c = -v.clone();
                    other.add_scaled(&c, &row);
                }
            }
        }
        for prev in pivot_rows.iter_mut() {
            let c = prev.get(col);
            if !c.is_zero() {
                prev.add_scaled(&-c, &row);
            }
        }
        pivot_rows.push(row);
        pivots.push(col);
    }
    let rank = pivot_rows.len();
    let mut trip = Vec::new();
    for (i, r) in pivot_rows.iter().enumerate() {
        for (j, v) in r.iter() {
            trip.push((i, j, v.clone()));
        }
    }
    (Matrix::from_triplets(m.nrows(), ncols, trip), rank)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_is_identity() {
        let id = Matrix::identity(2);
        let (r, k) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(k, 2);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let (r, k) = rref(&m);
        assert_eq!(r, Matrix::from_i64_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(k, 1);
    }

    #[test]
    fn nilpotency_of_shift() {
        let shift = Matrix::from_i64_rows(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(shift.nilpotency_index(), Some(3));
        assert_eq!(Matrix::identity(2).nilpotency_index(), None);
    }
}
