use num_traits::{One, Zero};

use super::matrix::{rref, Matrix};
use super::scalar::Scalar;
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// A subspace of `Q^n` held as a reduced row-echelon basis.
///
/// Every basis vector has a leading 1 at its pivot and zeros at all other
/// pivots, so the representation is canonical: equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(SparseVec::unit).collect(), pivots: (0..ambient).collect() }
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Residual of `v` after eliminating all pivot coordinates.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v.get(p);
            if !c.is_zero() {
                out.add_scaled(&-c, row);
            }
        }
        out
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.reduce(v).is_zero() {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v.get(p)).collect())
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        if let Some(m) = v.max_index() {
            if m >= self.ambient {
                return Err(Error::DimensionMismatch { expected: self.ambient, found: m + 1 });
            }
        }
        Ok(self.reduce(v).is_zero())
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading() else {
            return false;
        };
        let row = r.scaled(&lead.recip());
        for other in self.basis.iter_mut() {
            let c = other.get(p);
            if !c.is_zero() {
                other.add_scaled(&-c, &row);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.basis.insert(pos, row);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.reduce(v).is_zero())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for v in &other.basis {
            out.insert(v);
        }
        out
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // w = Σ c_i b_i lies in other iff Σ c_i reduce_other(b_i) = 0.
        let residuals: Vec<SparseVec> = self.basis.iter().map(|b| other.reduce(b)).collect();
        let m = Matrix::from_columns(self.ambient, residuals);
        let coeffs = kernel(&m);
        let vectors: Vec<SparseVec> = coeffs.basis.iter().map(|c| self.combine(c)).collect();
        Subspace::span(self.ambient, &vectors)
    }

    /// `Σ c_i b_i` for a coefficient vector over this basis.
    pub fn combine(&self, coeffs: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in coeffs.iter() {
            out.add_scaled(c, &self.basis[i]);
        }
        out
    }

    /// Standard basis indices outside the pivot set; they index a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut piv = self.pivots.iter().peekable();
        for i in 0..self.ambient {
            if piv.peek() == Some(&&i) {
                piv.next();
            } else {
                out.push(i);
            }
        }
        out
    }
}

/// Null space of `m` as a subspace of the column space `Q^{ncols}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let n = m.ncols();
    let (r, rank) = rref(m);
    let rows = r.row_vectors();
    let mut pivot_of_row = Vec::with_capacity(rank);
    for row in rows.iter().take(rank) {
        pivot_of_row.push(row.leading().map(|(i, _)| i).expect("nonzero pivot row"));
    }
    let mut is_pivot = vec![false; n];
    for &p in &pivot_of_row {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut pairs = vec![(free, Scalar::one())];
        for (row, &p) in rows.iter().zip(&pivot_of_row) {
            let c = row.get(free);
            if !c.is_zero() {
                pairs.push((p, -c));
            }
        }
        vectors.push(SparseVec::from_pairs(pairs));
    }
    Subspace::span(n, &vectors)
}

/// Largest `W ⊆ ambient` with `g·W ⊆ W` for every generator.
///
/// Iterates `W ← W ∩ ⋂_g g⁻¹(W)` (generators in input order) until the
/// dimension stops dropping.
pub fn largest_invariant_subspace(ambient: &Subspace, generators: &[Matrix]) -> Result<Subspace> {
    let n = ambient.ambient();
    for g in generators {
        g.check_square(n)?;
    }
    let mut current = ambient.clone();
    loop {
        if current.is_zero() {
            return Ok(current);
        }
        let k = current.dim();
        // Column i stacks reduce_W(g·b_i) over all generators.
        let mut stacked: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); k];
        for (gi, g) in generators.iter().enumerate() {
            for (i, b) in current.basis().iter().enumerate() {
                let res = current.reduce(&g.mul_vec(b));
                stacked[i].extend(res.iter().map(|(r, v)| (gi * n + r, v.clone())));
            }
        }
        let m = Matrix::from_columns(
            generators.len() * n,
            stacked.into_iter().map(SparseVec::from_pairs).collect(),
        );
        let coeffs = kernel(&m);
        if coeffs.dim() == k {
            return Ok(current);
        }
        let vectors: Vec<SparseVec> = coeffs.basis().iter().map(|c| current.combine(c)).collect();
        current = Subspace::span(n, &vectors);
    }
}
