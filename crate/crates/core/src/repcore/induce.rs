use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::module::WeightModule;
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exactnum::{frac, int, Matrix, Scalar, SparseVec};
use crate::superalg::{Parity, StructureTable};

/// A module for the complement 𝔭 of 𝔫 inside the acting algebra: actions are
/// given for 𝔭 elements only (`None` on 𝔫).
pub struct ParabolicModule {
    pub weights: Vec<Weight>,
    pub parity: Vec<Parity>,
    pub actions: Vec<Option<Matrix>>,
}

type Monomial = Vec<u16>;

/// `U(𝔤) ⊗_{U(𝔭)} W` on the PBW basis `y_{i1} ⋯ y_{ik} ⊗ w` with
/// `i1 ≤ … ≤ ik` (strict on odd letters), optionally truncated to monomials
/// of depth at most `max_depth`.
struct Inducer<'a> {
    table: &'a StructureTable,
    pos: Vec<Option<u16>>,
    nil: &'a [usize],
    depth: Vec<Scalar>,
    w: &'a ParabolicModule,
    max_depth: Option<Scalar>,
    index: HashMap<(Monomial, usize), usize>,
    memo: HashMap<(usize, Monomial, usize), SparseVec>,
}

impl Inducer<'_> {
    fn mono_depth(&self, m: &[u16]) -> Scalar {
        m.iter().map(|&p| self.depth[p as usize].clone()).sum()
    }

    fn basis_vec(&self, m: Monomial, w: usize) -> SparseVec {
        match self.index.get(&(m, w)) {
            Some(&i) => SparseVec::unit(i),
            None => SparseVec::new(),
        }
    }

    fn act_vec(&mut self, x: usize, v: &SparseVec, basis: &[(Monomial, usize)]) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            let (m, w) = &basis[i];
            let r = self.act(x, m.clone(), *w, basis);
            out.add_scaled(c, &r);
        }
        out
    }

    fn act_bracket(&mut self, br: &SparseVec, m: &[u16], w: usize, basis: &[(Monomial, usize)]) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in br.iter() {
            let r = self.act(k, m.to_vec(), w, basis);
            out.add_scaled(c, &r);
        }
        out
    }

    fn act(&mut self, x: usize, m: Monomial, w: usize, basis: &[(Monomial, usize)]) -> SparseVec {
        if let Some(limit) = &self.max_depth {
            // depth only grows along the recursion, so the whole result is truncated
            let h = self.table.weights[x].dot(&self.table.kind.height_functional());
            if self.mono_depth(&m) - h > *limit {
                return SparseVec::new();
            }
        }
        let key = (x, m, w);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let (x, m, w) = key;
        let result = self.compute(x, &m, w, basis);
        self.memo.insert((x, m, w), result.clone());
        result
    }

    fn compute(&mut self, x: usize, m: &[u16], w: usize, basis: &[(Monomial, usize)]) -> SparseVec {
        let px = self.pos[x];
        let Some(&y1) = m.first() else {
            return match px {
                Some(p) => self.basis_vec(vec![p], w),
                None => {
                    let a = self.w.actions[x].as_ref().expect("parabolic action");
                    let col = a.column(w).clone();
                    let mut out = SparseVec::new();
                    for (w2, c) in col.iter() {
                        out.add_scaled(c, &self.basis_vec(Vec::new(), w2));
                    }
                    out
                }
            };
        };
        let y1_elem = self.nil[y1 as usize];
        let odd_x = self.table.parity[x].is_odd();
        if let Some(p) = px {
            if p < y1 || (p == y1 && !odd_x) {
                let mut mm = Vec::with_capacity(m.len() + 1);
                mm.push(p);
                mm.extend_from_slice(m);
                return self.basis_vec(mm, w);
            }
            if p == y1 {
                // x·x = ½[x,x] for odd x
                let br = self.table.bracket(x, x).clone();
                return self.act_bracket(&br, m, w, basis).scaled(&frac(1, 2));
            }
        }
        let rest = &m[1..];
        let sign = self.table.parity[x].sign(self.table.parity[y1_elem]);
        let inner = self.act(x, rest.to_vec(), w, basis);
        let mut out = self.act_vec(y1_elem, &inner, basis).scaled(&int(sign as i64));
        let br = self.table.bracket(x, y1_elem).clone();
        if !br.is_zero() {
            let b = self.act_bracket(&br, rest, w, basis);
            out = out.add(&b);
        }
        out
    }
}

/// Induces `W` from 𝔭 to the full algebra along the ordered lowering list `nil`.
///
/// With `max_depth = None` every letter of `nil` must be odd, so the PBW basis
/// is finite (an exterior algebra); otherwise monomials deeper than the bound
/// are discarded, which is exact for weight spaces down to that depth.
pub fn induce(
    table: &Arc<StructureTable>,
    nil: &[usize],
    w: &ParabolicModule,
    max_depth: Option<Scalar>,
) -> Result<WeightModule> {
    if max_depth.is_none() && nil.iter().any(|&y| !table.parity[y].is_odd()) {
        return Err(Error::InvalidSpec("untruncated induction needs an odd nilradical".into()));
    }
    let height = table.kind.height_functional();
    let mut pos = vec![None; table.dim()];
    for (p, &y) in nil.iter().enumerate() {
        pos[y] = Some(p as u16);
    }
    let depth: Vec<Scalar> = nil.iter().map(|&y| -table.weights[y].dot(&height)).collect();
    if depth.iter().any(|d| *d <= Scalar::zero()) {
        return Err(Error::InvalidSpec("induction letters must be lowering".into()));
    }

    // Enumerate PBW monomials.
    let mut monomials: Vec<Monomial> = Vec::new();
    let mut stack: Vec<(Monomial, Scalar)> = vec![(Vec::new(), Scalar::zero())];
    while let Some((m, d)) = stack.pop() {
        let start = m.last().map(|&l| if table.parity[nil[l as usize]].is_odd() { l + 1 } else { l }).unwrap_or(0);
        for p in start..nil.len() as u16 {
            let nd = &d + &depth[p as usize];
            if let Some(limit) = &max_depth {
                if nd > *limit {
                    continue;
                }
            }
            let mut mm = m.clone();
            mm.push(p);
            stack.push((mm, nd));
        }
        monomials.push(m);
    }
    monomials.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut basis: Vec<(Monomial, usize)> = Vec::new();
    let mut weights = Vec::new();
    let mut parity = Vec::new();
    for m in &monomials {
        let mut mw = Weight::zero(table.weight_len());
        let mut mp = Parity::Even;
        for &p in m {
            mw = &mw + &table.weights[nil[p as usize]];
            mp = mp.add(table.parity[nil[p as usize]]);
        }
        for (wi, ww) in w.weights.iter().enumerate() {
            basis.push((m.clone(), wi));
            weights.push(table.canonical(&(&mw + ww)));
            parity.push(mp.add(w.parity[wi]));
        }
    }
    let index: HashMap<(Monomial, usize), usize> = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

    let mut ind = Inducer {
        table,
        pos,
        nil,
        depth,
        w,
        max_depth,
        index,
        memo: HashMap::new(),
    };
    let n = basis.len();
    let mut actions = Vec::with_capacity(table.dim());
    for x in 0..table.dim() {
        let cols: Vec<SparseVec> = (0..n)
            .map(|i| {
                let (m, wi) = basis[i].clone();
                ind.act(x, m, wi, &basis)
            })
            .collect();
        actions.push(Matrix::from_columns(n, cols));
    }
    Ok(WeightModule::new_unchecked(table.clone(), weights, parity, actions))
}
