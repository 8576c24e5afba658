use std::collections::{BTreeMap, HashMap};


use super::module::WeightModule;
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exactnum::{kernel, Matrix, Scalar, SparseVec, Subspace};

/// Result of [`irreducible_quotient`]: the quotient module, the maximal
/// submodule `N` in the coordinates of the input, and the projection of input
/// basis vectors onto quotient coordinates.
pub struct Quotient {
    pub module: WeightModule,
    pub kernel: Subspace,
    pub projection: Matrix,
}

/// Quotient of a cyclic highest-weight module by its maximal submodule.
///
/// `top` must be a basis vector spanning the highest weight space and killed
/// by the raising operators. The maximal submodule is
/// `N = {w : U(𝔫⁺)w has no component along the top}`, built weight space by
/// weight space from the top down: `N_μ` is the set of `w ∈ M_μ` whose images
/// under every raising generator land in the already computed `N_ν`.
pub fn irreducible_quotient(m: &WeightModule, top: usize) -> Result<Quotient> {
    let t = m.algebra().clone();
    let order = m.weights_by_height();
    let top_w = m.weight(top).clone();
    if order.first() != Some(&top_w) {
        return Err(Error::InvalidSpec("generating vector is not of highest weight".into()));
    }
    let spaces = m.weight_spaces();
    if spaces[&top_w].len() != 1 {
        return Err(Error::TopMultiplicity(spaces[&top_w].len()));
    }
    let top_vec = SparseVec::unit(top);
    for &g in &t.raising {
        if !m.act(g, &top_vec).is_zero() {
            return Err(Error::InvalidSpec(format!("{} does not kill the top vector", t.names[g])));
        }
    }
    check_cyclic(m, top, &order)?;

    // local position of each basis index inside its weight space
    let mut local: Vec<usize> = vec![0; m.dim()];
    for idx in spaces.values() {
        for (l, &i) in idx.iter().enumerate() {
            local[i] = l;
        }
    }
    let mut n_spaces: HashMap<Weight, Subspace> = HashMap::new();
    for w in &order {
        let idx = &spaces[w];
        if *w == top_w {
            n_spaces.insert(w.clone(), Subspace::zero(1));
            continue;
        }
        // rows: (generator, local index in target space); columns: local basis of M_μ
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); idx.len()];
        let mut offset = 0usize;
        let mut offsets: BTreeMap<usize, usize> = BTreeMap::new();
        for &g in &t.raising {
            let target = t.canonical(&(w + &t.weights[g]));
            let Some(tidx) = spaces.get(&target) else { continue };
            offsets.insert(g, offset);
            let nsp = &n_spaces[&target];
            for (l, &i) in idx.iter().enumerate() {
                let img = m.act(g, &SparseVec::unit(i));
                let loc = SparseVec::from_pairs(img.iter().map(|(r, c)| (local[r], c.clone())));
                let red = nsp.reduce(&loc);
                cols[l].extend(red.iter().map(|(r, c)| (offset + r, c.clone())));
            }
            offset += tidx.len();
        }
        let mat = Matrix::from_columns(offset, cols.into_iter().map(SparseVec::from_pairs).collect());
        n_spaces.insert(w.clone(), kernel(&mat));
    }

    // Quotient basis: non-pivot local coordinates of each N_μ.
    let mut q_index: HashMap<usize, usize> = HashMap::new();
    let mut q_weights = Vec::new();
    let mut q_parity = Vec::new();
    let mut reps = Vec::new();
    for w in &order {
        let idx = &spaces[w];
        let nsp = &n_spaces[w];
        let nsp = if nsp.ambient() != idx.len() { Subspace::zero(idx.len()) } else { nsp.clone() };
        for l in nsp.complement_indices() {
            q_index.insert(idx[l], q_weights.len());
            q_weights.push(w.clone());
            q_parity.push(m.parity()[idx[l]]);
            reps.push(idx[l]);
        }
    }
    let qn = q_weights.len();
    let project = |v: &SparseVec| -> SparseVec {
        let mut out = Vec::new();
        for (w, comp) in m.weight_components(v) {
            let idx = &spaces[&w];
            let nsp = &n_spaces[&w];
            let loc = SparseVec::from_pairs(comp.iter().map(|(r, c)| (local[r], c.clone())));
            let red = if nsp.ambient() == idx.len() { nsp.reduce(&loc) } else { loc };
            for (l, c) in red.iter() {
                out.push((q_index[&idx[l]], c.clone()));
            }
        }
        SparseVec::from_pairs(out)
    };
    let actions: Vec<Matrix> = m
        .actions()
        .iter()
        .map(|a| Matrix::from_columns(qn, reps.iter().map(|&i| project(a.column(i))).collect()))
        .collect();
    let projection = Matrix::from_columns(qn, (0..m.dim()).map(|i| project(&SparseVec::unit(i))).collect());

    let mut kernel_vectors = Vec::new();
    for (w, nsp) in &n_spaces {
        let idx = &spaces[w];
        if nsp.ambient() != idx.len() {
            continue;
        }
        for b in nsp.basis() {
            kernel_vectors.push(SparseVec::from_pairs(b.iter().map(|(l, c)| (idx[l], c.clone()))));
        }
    }
    let module = WeightModule::new_unchecked(t, q_weights, q_parity, actions);
    Ok(Quotient { module, kernel: Subspace::span(m.dim(), &kernel_vectors), projection })
}

/// Top-down check that `U(𝔫⁻)·top` reaches every weight space; this is all of
/// `U(𝔤)·top` because the top vector is killed by 𝔫⁺ and its weight space is a line.
fn check_cyclic(m: &WeightModule, top: usize, order: &[Weight]) -> Result<()> {
    let t = m.algebra();
    let spaces = m.weight_spaces();
    let mut reached: HashMap<Weight, Subspace> = HashMap::new();
    reached.insert(m.weight(top).clone(), Subspace::span(m.dim(), &[SparseVec::unit(top)]));
    let mut deficient = Vec::new();
    for w in order {
        if !reached.contains_key(w) {
            reached.insert(w.clone(), Subspace::zero(m.dim()));
        }
        let src = reached[w].clone();
        if src.dim() != spaces[w].len() {
            deficient.push(format!("{w}: {}/{}", src.dim(), spaces[w].len()));
        }
        for &g in &t.lowering {
            let target = t.canonical(&(w + &t.weights[g]));
            if !spaces.contains_key(&target) {
                continue;
            }
            let entry = reached.entry(target).or_insert_with(|| Subspace::zero(m.dim()));
            for b in src.basis() {
                let img = m.act(g, b);
                if !img.is_zero() {
                    entry.insert(&img);
                }
            }
        }
    }
    if deficient.is_empty() {
        Ok(())
    } else {
        Err(Error::NotCyclic(deficient))
    }
}
