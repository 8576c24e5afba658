use std::sync::Arc;

use num_traits::Zero;

use super::ideal::{IdealSpec, LaurentPoly};
use crate::exactnum::scalar::pow;
use crate::exactnum::{Matrix, Scalar, SparseVec};
use crate::superalg::{StructureTable, SuperAlgebra, WeightFrame};

/// The finite-dimensional superalgebra `𝔤 ⊗ L/I` with basis `x ⊗ t^s`,
/// `0 ≤ s < θ`, stored at index `s·dim 𝔤 + x`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    base: Arc<SuperAlgebra>,
    ideal: IdealSpec,
    table: Arc<StructureTable>,
}

pub fn quotient_algebra(alg: &Arc<SuperAlgebra>, ideal: &IdealSpec) -> QuotientAlgebra {
    let t = alg.table();
    let d = t.dim();
    let theta = ideal.theta();
    let powers: Vec<Vec<Scalar>> = (0..2 * theta - 1).map(|k| ideal.power_mod(k as i64)).collect();
    let idx = |x: usize, s: usize| s * d + x;
    let n = d * theta;
    let mut names = Vec::with_capacity(n);
    let mut parity = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut grade = Vec::with_capacity(n);
    let mut degree = Vec::with_capacity(n);
    let mut base = Vec::with_capacity(n);
    for s in 0..theta {
        for x in 0..d {
            names.push(format!("{}⊗t^{s}", t.names[x]));
            parity.push(t.parity[x]);
            weights.push(t.weights[x].clone());
            grade.push(t.grade[x]);
            degree.push(s);
            base.push(x);
        }
    }
    let mut brackets = vec![vec![SparseVec::new(); n]; n];
    for s in 0..theta {
        for r in 0..theta {
            let pw = &powers[s + r];
            for x in 0..d {
                for y in 0..d {
                    let br = t.bracket(x, y);
                    if br.is_zero() {
                        continue;
                    }
                    let mut pairs = Vec::new();
                    for (k, c) in br.iter() {
                        for (u, cu) in pw.iter().enumerate() {
                            if !cu.is_zero() {
                                pairs.push((idx(k, u), c * cu));
                            }
                        }
                    }
                    brackets[idx(x, s)][idx(y, r)] = SparseVec::from_pairs(pairs);
                }
            }
        }
    }
    let table = StructureTable::new(
        format!("{}⊗L/{}", t.label, ideal),
        t.kind,
        WeightFrame::Full,
        names,
        parity,
        weights,
        brackets,
        t.cartan.clone(),
        t.cartan_diag.clone(),
        grade,
        degree,
        base,
        theta,
    );
    QuotientAlgebra { base: alg.clone(), ideal: ideal.clone(), table: Arc::new(table) }
}

impl QuotientAlgebra {
    pub fn base(&self) -> &Arc<SuperAlgebra> {
        &self.base
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn table(&self) -> &Arc<StructureTable> {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn index(&self, x: usize, s: usize) -> usize {
        s * self.base_dim() + x
    }

    /// Coordinates of `x ⊗ f mod I`.
    pub fn element(&self, x: usize, f: &LaurentPoly) -> SparseVec {
        let coords = self.ideal.reduce(f);
        SparseVec::from_pairs(coords.into_iter().enumerate().map(|(s, c)| (self.index(x, s), c)))
    }

    /// Coordinates of `x ⊗ t^m mod I`.
    pub fn loop_element(&self, x: usize, m: i64) -> SparseVec {
        self.element(x, &LaurentPoly::t_power(m))
    }

    /// For a radical ideal, the Chinese-remainder isomorphism onto `𝔤^{⊕K}`:
    /// `x ⊗ t^s ↦ (a_1^s x, …, a_K^s x)`, with block `j` occupying rows
    /// `j·dim 𝔤 .. (j+1)·dim 𝔤`.
    pub fn crt_matrix(&self) -> Option<Matrix> {
        if !self.ideal.is_radical() {
            return None;
        }
        let d = self.base_dim();
        let k = self.ideal.k();
        let cols = (0..self.dim())
            .map(|i| {
                let (x, s) = (self.table.base[i], self.table.degree[i]);
                SparseVec::from_pairs(
                    self.ideal.points().iter().enumerate().map(|(j, a)| (j * d + x, pow(a, s as i64))),
                )
            })
            .collect();
        Some(Matrix::from_columns(k * d, cols))
    }
}
