use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::induce::{induce, ParabolicModule};
use super::module::{same_algebra, WeightModule};
use super::quotient::irreducible_quotient;
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exactnum::{int, Matrix, Scalar, SparseVec};
use crate::superalg::{AlgebraKind, Parity, StructureTable, SuperAlgebra};

/// A 𝔤_ss weight certified dominant integral, with its pairings against the
/// coroots of the even simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominantWeight {
    pub weight: Weight,
    pub pairings: Vec<i64>,
}

impl DominantWeight {
    pub fn new(alg: &SuperAlgebra, w: &Weight) -> Result<Self> {
        let weight = alg.kind.canonical_ss(w);
        alg.check_dominant(&weight)?;
        let pairings = alg
            .even_simple()
            .iter()
            .map(|(_, e, f)| crate::exactnum::scalar::to_i64(&alg.pair(&weight, &alg.coroot(*e, *f))).unwrap_or(0))
            .collect();
        Ok(DominantWeight { weight, pairings })
    }
}

/// Lowest weight `w₀λ` of V(λ) for 𝔤_ss (not canonicalized): coordinates are
/// reversed inside each sl block, and negated on the sp block.
fn longest_element(kind: AlgebraKind, w: &Weight) -> Weight {
    match kind {
        AlgebraKind::Sl { m, .. } => {
            let mut v = w.0.clone();
            v[..m].reverse();
            v[m..].reverse();
            Weight(v)
        }
        AlgebraKind::C { .. } => {
            let mut v: Vec<Scalar> = w.0.iter().map(|x| -x).collect();
            v[0] = w.0[0].clone();
            Weight(v)
        }
    }
}

/// Depth of the lowest weight of V(λ) below λ, measured by the height
/// functional on 𝔤_ss-canonical representatives.
pub fn lowest_depth(kind: AlgebraKind, w: &Weight) -> Scalar {
    let diff = &kind.canonical_ss(w) - &kind.canonical_ss(&longest_element(kind, w));
    diff.dot(&kind.height_functional())
}

/// Irreducible 𝔤_ss-module V(λ) as the head of a truncated Verma module.
pub fn hw_module_ss(alg: &SuperAlgebra, lambda: &DominantWeight) -> Result<WeightModule> {
    let ss = alg.ss_table();
    let lam = lambda.weight.clone();
    let cartan_actions: Vec<(usize, Scalar)> =
        ss.cartan.iter().enumerate().map(|(k, &h)| (h, ss.weight_value(&lam, k))).collect();
    let mut actions: Vec<Option<Matrix>> = vec![None; ss.dim()];
    for &x in &ss.raising {
        actions[x] = Some(Matrix::zeros(1, 1));
    }
    for (h, v) in cartan_actions {
        actions[h] = Some(Matrix::scalar(1, &v));
    }
    let w = ParabolicModule { weights: vec![lam.clone()], parity: vec![Parity::Even], actions };
    let mut nil = ss.lowering.clone();
    let height = alg.kind.height_functional();
    nil.sort_by_key(|&y| -ss.weights[y].dot(&height));
    let depth = lowest_depth(alg.kind, &lam) + int(1);
    let verma = induce(ss, &nil, &w, Some(depth))?;
    let top = verma.top_index()?;
    Ok(irreducible_quotient(&verma, top)?.module)
}

/// Extends a 𝔤_ss-module to 𝔤₀ = 𝔤_ss ⊕ ℂz with `z` acting by `zval`.
pub fn extend_by_z(alg: &SuperAlgebra, v: &WeightModule, zval: &Scalar) -> Result<WeightModule> {
    if !same_algebra(v.algebra(), alg.ss_table()) {
        return Err(Error::AlgebraMismatch);
    }
    let even = alg.even_table();
    let ss = alg.ss_table();
    let n = v.dim();
    let actions: Vec<Matrix> = even
        .base
        .iter()
        .map(|&b| {
            if b == alg.z_index() {
                Matrix::scalar(n, zval)
            } else {
                let k = ss.base.iter().position(|&x| x == b).expect("ss element");
                v.action(k).clone()
            }
        })
        .collect();
    let weights = v.weights().iter().map(|w| alg.kind.full_from_ss(w, zval)).collect();
    WeightModule::new(even.clone(), weights, v.parity().to_vec(), actions)
}

/// `Λ(𝔤₋₁) ⊗ V0` with 𝔤₊₁ killing `1 ⊗ V0`.
pub fn kac_module(alg: &SuperAlgebra, v0: &WeightModule) -> Result<WeightModule> {
    if !same_algebra(v0.algebra(), alg.even_table()) {
        return Err(Error::AlgebraMismatch);
    }
    let t = alg.table();
    let even = alg.even_table();
    let mut actions: Vec<Option<Matrix>> = vec![None; t.dim()];
    for (k, &b) in even.base.iter().enumerate() {
        actions[b] = Some(v0.action(k).clone());
    }
    for &x in &alg.grade_indices(1) {
        actions[x] = Some(Matrix::zeros(v0.dim(), v0.dim()));
    }
    let w = ParabolicModule { weights: v0.weights().to_vec(), parity: v0.parity().to_vec(), actions };
    induce(t, &alg.grade_indices(-1), &w, None)
}

/// The irreducible 𝔤-module V(λ) for a full weight λ whose 𝔤_ss part is dominant.
pub fn irreducible_g(alg: &SuperAlgebra, lambda: &Weight) -> Result<WeightModule> {
    let dom = DominantWeight::new(alg, lambda)?;
    let ss = hw_module_ss(alg, &dom)?;
    let zval = alg.kind.eval_diag(lambda, &alg.kind.z_diag());
    let v0 = extend_by_z(alg, &ss, &zval)?;
    let kac = kac_module(alg, &v0)?;
    let top = kac.top_index()?;
    Ok(irreducible_quotient(&kac, top)?.module)
}

/// The trivial module over any table.
pub fn trivial_module(table: &Arc<StructureTable>) -> WeightModule {
    let actions = (0..table.dim()).map(|_| Matrix::zeros(1, 1)).collect();
    WeightModule::new_unchecked(table.clone(), vec![Weight::zero(table.weight_len())], vec![Parity::Even], actions)
}

/// Tensor product with Koszul signs: an odd `x` acting on slot `j` picks up
/// the parity of slots `1..j−1`.
pub fn tensor(ms: &[&WeightModule]) -> Result<WeightModule> {
    let first = ms.first().ok_or_else(|| Error::InvalidSpec("empty tensor product".into()))?;
    let table = first.algebra().clone();
    if ms.iter().any(|m| !same_algebra(m.algebra(), &table)) {
        return Err(Error::AlgebraMismatch);
    }
    let coeffs: Vec<Vec<(usize, Scalar)>> =
        (0..table.dim()).map(|_| (0..ms.len()).map(|j| (j, int(1))).collect()).collect();
    Ok(tensor_twisted(&table, ms, |k, _| k, &coeffs))
}

/// Tensor product over `target`, where basis element `k` of `target` acts as
/// `Σ_j c_{k,j} · slot_j(ρ_j(base(k)))`.
pub(crate) fn tensor_twisted<F: Fn(usize, usize) -> usize>(
    target: &Arc<StructureTable>,
    ms: &[&WeightModule],
    base: F,
    coeffs: &[Vec<(usize, Scalar)>],
) -> WeightModule {
    let dims: Vec<usize> = ms.iter().map(|m| m.dim()).collect();
    let n: usize = dims.iter().product();
    let mut strides = vec![1usize; ms.len()];
    for j in (0..ms.len().saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * dims[j + 1];
    }
    let decode = |mut i: usize| -> Vec<usize> {
        let mut out = vec![0; ms.len()];
        for j in 0..ms.len() {
            out[j] = i / strides[j];
            i %= strides[j];
        }
        out
    };
    let mut weights = Vec::with_capacity(n);
    let mut parity = Vec::with_capacity(n);
    let multi: Vec<Vec<usize>> = (0..n).map(decode).collect();
    for idx in &multi {
        let mut w = Weight::zero(target.weight_len());
        let mut p = Parity::Even;
        for (j, &i) in idx.iter().enumerate() {
            w = &w + ms[j].weight(i);
            p = p.add(ms[j].parity()[i]);
        }
        weights.push(target.canonical(&w));
        parity.push(p);
    }
    let actions = (0..target.dim())
        .map(|k| {
            let odd = target.parity[k].is_odd();
            let cols = multi
                .iter()
                .map(|idx| {
                    let mut pairs = Vec::new();
                    let mut before = Parity::Even;
                    for (j, &i) in idx.iter().enumerate() {
                        let c = coeffs[k].iter().find(|(jj, _)| *jj == j).map(|(_, c)| c.clone());
                        if let Some(c) = c.filter(|c| !c.is_zero()) {
                            let sign = if odd && before.is_odd() { -c } else { c };
                            let flat: usize = idx.iter().zip(&strides).map(|(a, s)| a * s).sum::<usize>() - i * strides[j];
                            for (r, v) in ms[j].action(base(k, j)).column(i).iter() {
                                pairs.push((flat + r * strides[j], &sign * v));
                            }
                        }
                        before = before.add(ms[j].parity()[i]);
                    }
                    SparseVec::from_pairs(pairs)
                })
                .collect();
            Matrix::from_columns(n, cols)
        })
        .collect();
    WeightModule::new_unchecked(target.clone(), weights, parity, actions)
}
