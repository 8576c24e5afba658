use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};


use super::weight::Weight;
use crate::error::{Error, Result};
use crate::exactnum::{kernel, Matrix, Scalar, SparseVec, Subspace};
use crate::superalg::{Parity, StructureTable};

/// A finite-dimensional module over a [`StructureTable`], given by a weight
/// basis and the action matrix of every basis element of the acting algebra.
#[derive(Debug)]
pub struct WeightModule {
    algebra: Arc<StructureTable>,
    weights: Vec<Weight>,
    parity: Vec<Parity>,
    actions: Vec<Matrix>,
    spaces: OnceLock<BTreeMap<Weight, Vec<usize>>>,
}

impl Clone for WeightModule {
    fn clone(&self) -> Self {
        WeightModule::new_unchecked(self.algebra.clone(), self.weights.clone(), self.parity.clone(), self.actions.clone())
    }
}

impl WeightModule {
    pub(crate) fn new_unchecked(
        algebra: Arc<StructureTable>,
        weights: Vec<Weight>,
        parity: Vec<Parity>,
        actions: Vec<Matrix>,
    ) -> Self {
        WeightModule { algebra, weights, parity, actions, spaces: OnceLock::new() }
    }

    /// Builds a module, checking shapes and that Cartan elements act
    /// diagonally by the stated weights.
    pub fn new(
        algebra: Arc<StructureTable>,
        weights: Vec<Weight>,
        parity: Vec<Parity>,
        actions: Vec<Matrix>,
    ) -> Result<Self> {
        let n = weights.len();
        if parity.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: parity.len() });
        }
        if actions.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: actions.len() });
        }
        for a in &actions {
            a.check_square(n)?;
        }
        let weights: Vec<Weight> = weights.iter().map(|w| algebra.canonical(w)).collect();
        let m = WeightModule::new_unchecked(algebra, weights, parity, actions);
        if let Some((k, i)) = m.cartan_violation() {
            return Err(Error::InvalidSpec(format!(
                "Cartan element {} does not act diagonally by the weight of basis vector {i}",
                m.algebra.names[m.algebra.cartan[k]]
            )));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn algebra(&self) -> &Arc<StructureTable> {
        &self.algebra
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn action(&self, x: usize) -> &Matrix {
        &self.actions[x]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Action of an algebra element given in basis coordinates.
    pub fn action_of(&self, x: &SparseVec) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (i, c) in x.iter() {
            out.add_scaled(c, &self.actions[i]);
        }
        out
    }

    pub fn act(&self, x: usize, v: &SparseVec) -> SparseVec {
        self.actions[x].mul_vec(v)
    }

    /// Basis indices grouped by weight.
    pub fn weight_spaces(&self) -> &BTreeMap<Weight, Vec<usize>> {
        self.spaces.get_or_init(|| {
            let mut map: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
            for (i, w) in self.weights.iter().enumerate() {
                map.entry(w.clone()).or_default().push(i);
            }
            map
        })
    }

    pub fn weight_multiplicities(&self) -> BTreeMap<Weight, usize> {
        self.weight_spaces().iter().map(|(w, v)| (w.clone(), v.len())).collect()
    }

    pub fn height(&self, w: &Weight) -> Scalar {
        w.dot(&self.algebra.kind.height_functional())
    }

    /// Weights sorted by decreasing height.
    pub fn weights_by_height(&self) -> Vec<Weight> {
        let mut ws: Vec<Weight> = self.weight_spaces().keys().cloned().collect();
        ws.sort_by(|a, b| self.height(b).cmp(&self.height(a)).then_with(|| a.cmp(b)));
        ws
    }

    /// First `(cartan position, basis index)` where a Cartan element fails to
    /// act by the weight of a basis vector.
    pub fn cartan_violation(&self) -> Option<(usize, usize)> {
        for (k, &h) in self.algebra.cartan.iter().enumerate() {
            let a = &self.actions[h];
            for i in 0..self.dim() {
                let expected = SparseVec::single(i, self.algebra.weight_value(&self.weights[i], k));
                if a.column(i) != &expected {
                    return Some((k, i));
                }
            }
        }
        None
    }

    /// First pair `(x, y)` from `pairs` with `ρ([x,y]) ≠ ρ(x)ρ(y) − (−1)^{|x||y|}ρ(y)ρ(x)`.
    pub fn bracket_violation<I: IntoIterator<Item = (usize, usize)>>(&self, pairs: I) -> Option<(usize, usize)> {
        for (x, y) in pairs {
            let sign = self.algebra.parity[x].sign(self.algebra.parity[y]);
            let lhs = self.action_of(self.algebra.bracket(x, y));
            let rhs = self.actions[x].supercommutator(&self.actions[y], sign);
            if lhs != rhs {
                return Some((x, y));
            }
        }
        None
    }

    pub fn all_pairs(&self) -> Vec<(usize, usize)> {
        let d = self.algebra.dim();
        (0..d).flat_map(|x| (0..d).map(move |y| (x, y))).collect()
    }

    /// Even root vectors act nilpotently (𝔥-semisimplicity holds by construction).
    pub fn is_integrable(&self) -> bool {
        self.algebra.even_root_vectors().iter().all(|&x| self.actions[x].nilpotency_index().is_some())
    }

    /// Joint kernel of the raising operators, computed weight space by weight space.
    pub fn singular_space(&self) -> Subspace {
        let mut vectors = Vec::new();
        for idx in self.weight_spaces().values() {
            let local = self.local_kernel(idx, &self.algebra.raising);
            for v in local.basis() {
                vectors.push(SparseVec::from_pairs(v.iter().map(|(l, c)| (idx[l], c.clone()))));
            }
        }
        Subspace::span(self.dim(), &vectors)
    }

    /// Kernel of the stacked operators restricted to the span of `idx`, in local coordinates.
    fn local_kernel(&self, idx: &[usize], ops: &[usize]) -> Subspace {
        let mut columns: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); idx.len()];
        for (gi, &g) in ops.iter().enumerate() {
            for (l, &i) in idx.iter().enumerate() {
                for (r, c) in self.actions[g].column(i).iter() {
                    columns[l].push((gi * self.dim() + r, c.clone()));
                }
            }
        }
        let m = Matrix::from_columns(
            ops.len() * self.dim(),
            columns.into_iter().map(SparseVec::from_pairs).collect(),
        );
        kernel(&m)
    }

    /// Splits a vector into its weight components.
    pub fn weight_components(&self, v: &SparseVec) -> BTreeMap<Weight, SparseVec> {
        let mut out: BTreeMap<Weight, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (i, c) in v.iter() {
            out.entry(self.weights[i].clone()).or_default().push((i, c.clone()));
        }
        out.into_iter().map(|(w, p)| (w, SparseVec::from_pairs(p))).collect()
    }

    /// The submodule generated by `seeds`, under every basis element of the algebra.
    pub fn closure(&self, seeds: &[SparseVec]) -> Subspace {
        self.closure_under(seeds, &(0..self.algebra.dim()).collect::<Vec<_>>())
    }

    /// Span of everything reachable from `seeds` under the operators `ops`.
    /// Works weight space by weight space; weight components of seeds are
    /// split off first (valid because the span is 𝔥-stable when `ops` contains
    /// the Cartan elements, and harmless otherwise for weight-homogeneous seeds).
    pub fn closure_under(&self, seeds: &[SparseVec], ops: &[usize]) -> Subspace {
        let mut spaces: BTreeMap<Weight, Subspace> = BTreeMap::new();
        let mut queue: Vec<SparseVec> = Vec::new();
        let push = |v: SparseVec, spaces: &mut BTreeMap<Weight, Subspace>, queue: &mut Vec<SparseVec>| {
            for (w, comp) in self.weight_components(&v) {
                let s = spaces.entry(w).or_insert_with(|| Subspace::zero(self.dim()));
                let r = s.reduce(&comp);
                if !r.is_zero() {
                    s.insert(&r);
                    queue.push(r);
                }
            }
        };
        for s in seeds {
            push(s.clone(), &mut spaces, &mut queue);
        }
        while let Some(v) = queue.pop() {
            for &g in ops {
                let gv = self.actions[g].mul_vec(&v);
                if !gv.is_zero() {
                    push(gv, &mut spaces, &mut queue);
                }
            }
        }
        let all: Vec<SparseVec> = spaces.values().flat_map(|s| s.basis().to_vec()).collect();
        Subspace::span(self.dim(), &all)
    }

    /// Irreducibility certificate: the singular space is a line and generates the module.
    pub fn is_irreducible(&self) -> bool {
        if self.dim() == 0 {
            return false;
        }
        let sing = self.singular_space();
        if sing.dim() != 1 {
            return false;
        }
        self.closure(&sing.basis()[..1]).dim() == self.dim()
    }

    /// The unique highest-weight vector index when the top weight space is a single basis vector.
    pub fn top_index(&self) -> Result<usize> {
        let top = self.weights_by_height().into_iter().next().ok_or(Error::TopMultiplicity(0))?;
        let idx = &self.weight_spaces()[&top];
        if idx.len() != 1 {
            return Err(Error::TopMultiplicity(idx.len()));
        }
        Ok(idx[0])
    }

    pub fn top_weight(&self) -> Option<Weight> {
        self.weights_by_height().into_iter().next()
    }

    /// Direct sum of two modules over the same algebra.
    pub fn direct_sum(&self, other: &WeightModule) -> Result<WeightModule> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let n1 = self.dim();
        let n = n1 + other.dim();
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut cols: Vec<SparseVec> = a.columns().to_vec();
                cols.extend(b.columns().iter().map(|c| c.remap(|i| Some(i + n1))));
                Matrix::from_columns(n, cols)
            })
            .collect();
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        let mut parity = self.parity.clone();
        parity.extend(other.parity.iter().copied());
        Ok(WeightModule::new_unchecked(self.algebra.clone(), weights, parity, actions))
    }

    /// Same module with one action matrix replaced (for falsifiability tests).
    pub fn with_action(&self, x: usize, m: Matrix) -> WeightModule {
        let mut actions = self.actions.clone();
        actions[x] = m;
        WeightModule::new_unchecked(self.algebra.clone(), self.weights.clone(), self.parity.clone(), actions)
    }
}

pub(crate) fn same_algebra(a: &Arc<StructureTable>, b: &Arc<StructureTable>) -> bool {
    Arc::ptr_eq(a, b) || (a.label == b.label && a.dim() == b.dim() && a.names == b.names)
}
