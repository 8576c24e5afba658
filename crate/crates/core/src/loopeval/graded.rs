use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, RwLock};

use super::ideal::IdealSpec;
use crate::error::{Error, Result};
use crate::exactnum::{int, Matrix, Scalar, SparseVec, Subspace};
use crate::repcore::{Weight, WeightModule};

/// `V ⊗ L` for a level-zero module `V` over `𝔤 ⊗ L/I`: slice `s` is a copy of
/// `V`, `x(m)` maps slice `s` to slice `s+m` by `ρ(x ⊗ t^m mod I)`, and `d`
/// acts on slice `s` by `s + b`.
pub struct GradedLoopModule {
    module: Arc<WeightModule>,
    ideal: IdealSpec,
    offset: Scalar,
    cache: RwLock<HashMap<(usize, i64), Arc<Matrix>>>,
}

/// A cyclic graded submodule `U(G)v(i)`, recorded slice by slice on a window.
#[derive(Clone, Debug)]
pub struct LoopComponent {
    pub index: i64,
    pub slices: BTreeMap<i64, Subspace>,
}

impl LoopComponent {
    pub fn slice_dims(&self) -> BTreeMap<i64, usize> {
        self.slices.iter().map(|(s, sp)| (*s, sp.dim())).collect()
    }
}

pub fn loop_module(v: Arc<WeightModule>, ideal: &IdealSpec, b: Scalar) -> Result<GradedLoopModule> {
    let theta = v.algebra().theta;
    if theta != ideal.theta() {
        return Err(Error::InvalidIdeal(format!(
            "module is over a quotient with θ = {theta}, ideal has θ = {}",
            ideal.theta()
        )));
    }
    Ok(GradedLoopModule { module: v, ideal: ideal.clone(), offset: b, cache: RwLock::new(HashMap::new()) })
}

impl GradedLoopModule {
    pub fn module(&self) -> &Arc<WeightModule> {
        &self.module
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn slice_dim(&self) -> usize {
        self.module.dim()
    }

    /// Dimension of the underlying algebra 𝔤.
    pub fn base_dim(&self) -> usize {
        self.module.algebra().dim() / self.ideal.theta()
    }

    /// Eigenvalue of `d` on slice `s`.
    pub fn d_eigenvalue(&self, s: i64) -> Scalar {
        int(s) + &self.offset
    }

    /// Weight of `w(s)` for the basis vector `w = e_i`: 𝔥-weight and `d`-eigenvalue.
    pub fn weight(&self, i: usize, s: i64) -> (Weight, Scalar) {
        (self.module.weight(i).clone(), self.d_eigenvalue(s))
    }

    pub fn slice_multiplicities(&self) -> BTreeMap<Weight, usize> {
        self.module.weight_multiplicities()
    }

    /// Matrix of `x(m)` from slice `s` to slice `s+m` (independent of `s`).
    pub fn x_action(&self, x: usize, m: i64) -> Arc<Matrix> {
        if let Some(a) = self.cache.read().expect("cache lock").get(&(x, m)) {
            return a.clone();
        }
        let d = self.base_dim();
        let n = self.module.dim();
        let mut out = Matrix::zeros(n, n);
        for (s, c) in self.ideal.power_mod(m).iter().enumerate() {
            out.add_scaled(c, self.module.action(s * d + x));
        }
        let out = Arc::new(out);
        self.cache.write().expect("cache lock").entry((x, m)).or_insert(out).clone()
    }

    /// Applies `x(m)` to a vector sitting in slice `s`.
    pub fn act(&self, x: usize, m: i64, s: i64, v: &SparseVec) -> (i64, SparseVec) {
        (s + m, self.x_action(x, m).mul_vec(v))
    }

    /// Graded span of everything reachable from `seeds` by `x(−1), x(0), x(1)`
    /// (which generate 𝔤 ⊗ L as a Lie superalgebra), never leaving slices
    /// `lo..=hi`.
    pub fn closure(&self, seeds: &[(i64, SparseVec)], lo: i64, hi: i64) -> BTreeMap<i64, Subspace> {
        let ops: Vec<(usize, i64)> = (-1..=1).flat_map(|m| (0..self.base_dim()).map(move |x| (x, m))).collect();
        self.closure_with(seeds, &ops, lo, hi)
    }

    /// Graded span of everything reachable from `seeds` by the operators
    /// `x(m)` for `(x, m)` in `ops`, within slices `lo..=hi`.
    pub fn closure_with(&self, seeds: &[(i64, SparseVec)], ops: &[(usize, i64)], lo: i64, hi: i64) -> BTreeMap<i64, Subspace> {
        let (spaces, _) = self.search(seeds, ops, lo, hi, None);
        let n = self.module.dim();
        let mut grouped: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
        for ((s, _), sp) in spaces {
            grouped.entry(s).or_default().extend(sp.basis().iter().cloned());
        }
        (lo..=hi).map(|s| (s, Subspace::span(n, grouped.get(&s).map(Vec::as_slice).unwrap_or(&[])))).collect()
    }

    /// Breadth-first closure by weight space; stops early once every weight
    /// component of `target` lies in the reached part of its slice.
    fn search(
        &self,
        seeds: &[(i64, SparseVec)],
        ops: &[(usize, i64)],
        lo: i64,
        hi: i64,
        target: Option<(i64, &SparseVec)>,
    ) -> (HashMap<(i64, Weight), Subspace>, bool) {
        let n = self.module.dim();
        let ops: Vec<(i64, Arc<Matrix>)> = ops.iter().map(|&(x, m)| (m, self.x_action(x, m))).collect();
        let goal: Vec<(i64, Weight, SparseVec)> = match target {
            Some((t, v)) => self.module.weight_components(v).into_iter().map(|(w, c)| (t, w, c)).collect(),
            None => Vec::new(),
        };
        let mut open: Vec<bool> = vec![true; goal.len()];
        let mut spaces: HashMap<(i64, Weight), Subspace> = HashMap::new();
        let mut queue: VecDeque<(i64, SparseVec)> = VecDeque::new();
        // returns true once the target is reached
        let mut push = |s: i64, v: &SparseVec, spaces: &mut HashMap<(i64, Weight), Subspace>, queue: &mut VecDeque<(i64, SparseVec)>| {
            for (w, comp) in self.module.weight_components(v) {
                let sp = spaces.entry((s, w.clone())).or_insert_with(|| Subspace::zero(n));
                let r = sp.reduce(&comp);
                if !r.is_zero() {
                    sp.insert(&r);
                    queue.push_back((s, r));
                    for (k, (t, gw, gv)) in goal.iter().enumerate() {
                        if open[k] && *t == s && *gw == w && sp.reduce(gv).is_zero() {
                            open[k] = false;
                        }
                    }
                }
            }
            !goal.is_empty() && open.iter().all(|o| !o)
        };
        for (s, v) in seeds {
            if (lo..=hi).contains(s) && push(*s, v, &mut spaces, &mut queue) {
                return (spaces, true);
            }
        }
        while let Some((s, v)) = queue.pop_front() {
            for (m, a) in &ops {
                let t = s + m;
                if !(lo..=hi).contains(&t) {
                    continue;
                }
                let img = a.mul_vec(&v);
                if !img.is_zero() && push(t, &img, &mut spaces, &mut queue) {
                    return (spaces, true);
                }
            }
        }
        (spaces, goal.is_empty())
    }

    /// Whether the graded submodule generated by `u` in slice `s` contains `v` in slice `t`.
    pub fn regenerates(&self, (s, u): (i64, &SparseVec), (t, v): (i64, &SparseVec), lo: i64, hi: i64) -> Result<bool> {
        if v.is_zero() {
            return Ok(true);
        }
        let ops: Vec<(usize, i64)> = (-1..=1).flat_map(|m| (0..self.base_dim()).map(move |x| (x, m))).collect();
        Ok(self.search(&[(s, u.clone())], &ops, lo, hi, Some((t, v))).1)
    }
}

/// Splits `V ⊗ L` into the cyclic components `U(G)v(i)`, `i = 0..r−1`,
/// certified on the slices `lo..=hi`: in every slice the component dimensions
/// add up to `dim V` and the components span `V`, so the sum is direct.
///
/// Closures are computed on an enlarged window; if the certificate fails
/// after a few enlargements the window is reported as too small.
pub fn decompose_loop(g: &GradedLoopModule, v: &SparseVec, r: usize, lo: i64, hi: i64) -> Result<Vec<LoopComponent>> {
    if r == 0 {
        return Err(Error::InvalidSpec("decomposition needs a period r ≥ 1".into()));
    }
    let n = g.slice_dim();
    let base_margin = 2 * (r + g.ideal().theta()) as i64;
    let mut detail = String::new();
    for attempt in 0..3 {
        let margin = base_margin << attempt;
        let comps: Vec<LoopComponent> = (0..r as i64)
            .map(|i| {
                let mut slices = g.closure(&[(i, v.clone())], lo - margin, hi + margin);
                slices.retain(|s, _| (lo..=hi).contains(s));
                LoopComponent { index: i, slices }
            })
            .collect();
        let mut ok = true;
        for s in lo..=hi {
            let total: usize = comps.iter().map(|c| c.slices[&s].dim()).sum();
            let all: Vec<SparseVec> = comps.iter().flat_map(|c| c.slices[&s].basis().to_vec()).collect();
            let span = Subspace::span(n, &all).dim();
            if total != n || span != n {
                ok = false;
                detail = format!("slice {s}: component dimensions sum to {total}, span {span}, dim V = {n}");
                break;
            }
        }
        if ok {
            return Ok(comps);
        }
    }
    Err(Error::WindowTooSmall { lo, hi, detail })
}
