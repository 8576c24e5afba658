use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::algebra::SuperAlgebra;
use super::supermatrix::{Parity, SuperMatrix};
use crate::exactnum::{Matrix, Scalar, SparseVec, Subspace};
use crate::repcore::Weight;

#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub simple: Vec<Weight>,
    pub even_positive: Vec<Weight>,
    pub odd_positive: Vec<Weight>,
    pub gram: Vec<Vec<String>>,
    #[serde(skip)]
    pub root_spaces: Vec<(Weight, Vec<SuperMatrix>)>,
}

impl RootDatum {
    pub fn positive(&self) -> Vec<Weight> {
        self.even_positive.iter().chain(&self.odd_positive).cloned().collect()
    }
}

fn ad_matrix(a: &SuperAlgebra, x: usize) -> Matrix {
    let t = a.table();
    Matrix::from_columns(a.dim(), (0..a.dim()).map(|j| t.bracket(x, j).clone()).collect())
}

/// Root data recomputed from the adjoint action: every root space is found as
/// a joint eigenspace of ad(𝔥), with candidate eigenvalues read off the
/// gl-diagonal of each Cartan element.
pub fn root_datum(a: &SuperAlgebra) -> RootDatum {
    let t = a.table();
    let n = a.dim();
    let size = t.cartan_diag[0].len();
    let ads: Vec<Matrix> = t.cartan.iter().map(|&h| ad_matrix(a, h)).collect();

    let mut candidates: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    for i in 0..size {
        for j in 0..size {
            let vals: Vec<Scalar> = t.cartan_diag.iter().map(|d| &d[i] - &d[j]).collect();
            if vals.iter().any(|v| !v.is_zero()) {
                candidates.insert(vals);
            }
        }
    }

    let height = a.kind.height_functional();
    let mut root_spaces = Vec::new();
    let mut even_positive = Vec::new();
    let mut odd_positive = Vec::new();
    for vals in candidates {
        let mut rows = Vec::new();
        for (ad, c) in ads.iter().zip(&vals) {
            let shifted = ad.sub(&Matrix::scalar(n, c));
            rows.extend(shifted.row_vectors());
        }
        let m = Matrix::from_rows(&rows.iter().map(|r| r.to_dense(n)).collect::<Vec<_>>());
        let space = crate::exactnum::kernel(&m);
        if space.is_zero() {
            continue;
        }
        let w = a.weight_from_values(&vals).expect("Cartan values determine a weight");
        let mats: Vec<SuperMatrix> = space.basis().iter().map(|v| a.element(v)).collect();
        let parity = mats[0].parity().unwrap_or(Parity::Even);
        if w.dot(&height) > Scalar::zero() {
            match parity {
                Parity::Even => even_positive.push(w.clone()),
                Parity::Odd => odd_positive.push(w.clone()),
            }
        }
        root_spaces.push((w, mats));
    }
    let positive: Vec<Weight> = even_positive.iter().chain(&odd_positive).cloned().collect();
    let simple = positive
        .iter()
        .filter(|w| !positive.iter().any(|x| positive.iter().any(|y| &(x + y) == *w)))
        .cloned()
        .collect();
    let gram = a
        .kind
        .gram()
        .iter()
        .map(|r| r.iter().map(crate::exactnum::format_scalar).collect())
        .collect();
    RootDatum { simple, even_positive, odd_positive, gram, root_spaces }
}

/// The ℤ-grading 𝔤 = 𝔤₋₁ ⊕ 𝔤₀ ⊕ 𝔤₊₁ as subspaces of algebra coordinates.
#[derive(Clone, Debug)]
pub struct ZGrading {
    pub minus: Subspace,
    pub zero: Subspace,
    pub plus: Subspace,
}

#[derive(Clone, Debug)]
pub struct Triangular {
    pub n_minus: Subspace,
    pub cartan: Subspace,
    pub n_plus: Subspace,
    pub grading: ZGrading,
}

fn coordinate_span(dim: usize, idx: &[usize]) -> Subspace {
    Subspace::span(dim, &idx.iter().map(|&i| SparseVec::unit(i)).collect::<Vec<_>>())
}

pub fn triangular(a: &SuperAlgebra) -> Triangular {
    let d = a.dim();
    let grading = ZGrading {
        minus: coordinate_span(d, &a.grade_indices(-1)),
        zero: coordinate_span(d, &a.grade_indices(0)),
        plus: coordinate_span(d, &a.grade_indices(1)),
    };
    Triangular {
        n_minus: coordinate_span(d, a.negative()),
        cartan: coordinate_span(d, &a.table().cartan),
        n_plus: coordinate_span(d, a.positive()),
        grading,
    }
}
