use num_traits::Zero;

use super::vector::SparseVec;

/// Expresses vectors in a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct BasisSolver {
    echelon: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivots: Vec<usize>,
    len: usize,
}

impl BasisSolver {
    /// `None` if the family is linearly dependent.
    pub fn new(family: &[SparseVec]) -> Option<Self> {
        let mut s = BasisSolver { echelon: Vec::new(), combos: Vec::new(), pivots: Vec::new(), len: family.len() };
        for (i, v) in family.iter().enumerate() {
            let (res, combo) = s.reduce(v);
            let (p, lead) = res.leading()?;
            let inv = lead.recip();
            let row = res.scaled(&inv);
            // res = family_i − family·combo
            let row_combo = SparseVec::unit(i).sub(&combo).scaled(&inv);
            for (e, c) in s.echelon.iter_mut().zip(s.combos.iter_mut()) {
                let k = e.get(p);
                if !k.is_zero() {
                    e.add_scaled(&-k.clone(), &row);
                    c.add_scaled(&-k, &row_combo);
                }
            }
            s.echelon.push(row);
            s.combos.push(row_combo);
            s.pivots.push(p);
        }
        Some(s)
    }

    /// Residual of `v` and the combination of family members that was subtracted.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut combo = SparseVec::new();
        for ((row, c), &p) in self.echelon.iter().zip(&self.combos).zip(&self.pivots) {
            let k = v.get(p);
            if !k.is_zero() {
                res.add_scaled(&-k.clone(), row);
                combo.add_scaled(&k, c);
            }
        }
        (res, combo)
    }

    /// Coefficients `c` with `Σ c_i family_i = v`, if `v` is in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, combo) = self.reduce(v);
        res.is_zero().then_some(combo)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}
