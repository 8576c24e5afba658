use std::collections::BTreeMap;

use num_traits::Zero;

use super::spec::{ss_diags, TauModuleSpec};
use crate::error::{Error, Result};
use crate::exactnum::recurrence::{berlekamp_massey, satisfies};
use crate::exactnum::scalar::pow;
use crate::exactnum::{BasisSolver, Poly, Scalar, SparseVec};
use crate::loopeval::GradedLoopModule;
use crate::repcore::Weight;
use crate::superalg::SuperAlgebra;

/// Rebuilds the canonical spec from the scalar sequences `ψ(h_k ⊗ t^m)` (over
/// the semisimple Cartan basis) and `τ_m`, both known to satisfy a recurrence
/// of order at most `order`.
///
/// Points are the roots of the minimal recurrences, sorted; a point's
/// multiplicity is its multiplicity in the minimal recurrence of τ (at least 1).
/// The weights solve the Vandermonde system on the first terms. The trivial
/// module is normalized to the single point 1.
fn spec_from_sequences(
    alg: &SuperAlgebra,
    psi: &dyn Fn(usize, i64) -> Scalar,
    tau: &dyn Fn(i64) -> Scalar,
    order: usize,
    offset: Scalar,
) -> Result<TauModuleSpec> {
    let rank = alg.ss_cartan().len();
    let terms = 2 * order as i64 + 2;
    let psi_seqs: Vec<Vec<Scalar>> = (0..rank).map(|k| (0..terms).map(|m| psi(k, m)).collect()).collect();
    let tau_seq: Vec<Scalar> = (0..terms).map(tau).collect();

    let mut psi_poly = Poly::one();
    for s in &psi_seqs {
        let p = berlekamp_massey(s);
        if !satisfies(&p, s) {
            return Err(Error::Extraction("ψ sequence has no recurrence of the expected order".into()));
        }
        psi_poly = psi_poly.lcm(&p);
    }
    let tau_poly = berlekamp_massey(&tau_seq);
    if !satisfies(&tau_poly, &tau_seq) {
        return Err(Error::Extraction("τ sequence has no recurrence of the expected order".into()));
    }
    let roots = |p: &Poly, what: &str| -> Result<Vec<(Scalar, usize)>> {
        if p.degree() == 0 {
            return Ok(Vec::new());
        }
        let r = p.rational_roots().ok_or_else(|| Error::Extraction(format!("{what} recurrence does not split over ℚ")))?;
        if r.iter().any(|(a, _)| a.is_zero()) {
            return Err(Error::Extraction(format!("{what} recurrence has the root 0")));
        }
        Ok(r)
    };
    let psi_roots = roots(&psi_poly, "ψ")?;
    if let Some((a, _)) = psi_roots.iter().find(|(_, b)| *b > 1) {
        return Err(Error::Extraction(format!("ψ has a repeated root at {a}; 𝔥_ss data must be of evaluation type")));
    }
    let tau_roots = roots(&tau_poly, "τ")?;

    let mut mults: BTreeMap<Scalar, usize> = BTreeMap::new();
    for (a, _) in &psi_roots {
        mults.insert(a.clone(), 1);
    }
    for (a, b) in &tau_roots {
        let e = mults.entry(a.clone()).or_insert(0);
        *e = (*e).max(*b);
    }
    if mults.is_empty() {
        mults.insert(Scalar::from_integer(1.into()), 1);
    }
    let points: Vec<Scalar> = mults.keys().cloned().collect();

    // Vandermonde solve for λ_j(h_k) at the ψ roots
    let psi_points: Vec<Scalar> = psi_roots.iter().map(|(a, _)| a.clone()).collect();
    let p = psi_points.len();
    let mut values: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); rank]; p];
    if p > 0 {
        let cols: Vec<SparseVec> =
            psi_points.iter().map(|a| SparseVec::from_dense(&(0..p as i64).map(|m| pow(a, m)).collect::<Vec<_>>())).collect();
        let solver = BasisSolver::new(&cols).ok_or_else(|| Error::Extraction("singular Vandermonde system".into()))?;
        for (k, s) in psi_seqs.iter().enumerate() {
            let sol = solver
                .solve(&SparseVec::from_dense(&s[..p]))
                .ok_or_else(|| Error::Extraction("inconsistent Vandermonde system".into()))?;
            for (j, row) in values.iter_mut().enumerate() {
                row[k] = sol.get(j);
            }
        }
    }
    let t = alg.table();
    let lambdas: Vec<Weight> = points
        .iter()
        .map(|a| match psi_points.iter().position(|x| x == a) {
            Some(j) => {
                let full: Vec<Scalar> = t
                    .cartan
                    .iter()
                    .map(|h| match alg.ss_cartan().iter().position(|x| x == h) {
                        Some(k) => values[j][k].clone(),
                        None => Scalar::zero(),
                    })
                    .collect();
                alg.weight_from_values(&full)
                    .map(|w| alg.kind.canonical_ss(&w))
                    .ok_or_else(|| Error::Extraction("no weight takes the recovered values".into()))
            }
            None => Ok(Weight::zero(alg.kind.coord_len())),
        })
        .collect::<Result<_>>()?;
    let theta: usize = mults.values().sum();
    let window: Vec<Scalar> = (0..theta as i64).map(tau).collect();
    TauModuleSpec::new(alg, lambdas, points, mults.into_values().collect(), window, offset)
}

/// Canonical form of a spec: the spec rebuilt from its own ψ and τ sequences.
/// Points whose data is redundant are dropped, multiplicities are reduced to
/// those of the minimal recurrence of τ, and points are sorted.
pub fn normalize(alg: &SuperAlgebra, spec: &TauModuleSpec) -> Result<TauModuleSpec> {
    let diags = ss_diags(alg);
    let psi = |k: usize, m: i64| alg.kind.eval_diag(&spec.psi_ss(m), &diags[k]);
    let tau = |m: i64| spec.tau.get(m);
    spec_from_sequences(alg, &psi, &tau, spec.theta(), spec.offset.clone())
}

/// Reads `(λ̲, a̲, τ, b)` off a graded module from the action of `h ⊗ t^m` and
/// `z ⊗ t^m` on its top vector.
pub fn extract_spec(alg: &SuperAlgebra, graded: &GradedLoopModule, top: usize) -> Result<TauModuleSpec> {
    let module = graded.module();
    let v = SparseVec::unit(top);
    let t = module.algebra();
    for &g in &t.raising {
        if !module.act(g, &v).is_zero() {
            return Err(Error::Extraction(format!("{} does not kill the top vector", t.names[g])));
        }
    }
    let eigen = |x: usize, m: i64| -> Result<Scalar> {
        let img = graded.x_action(x, m).mul_vec(&v);
        let c = img.get(top);
        if img != v.scaled(&c) {
            return Err(Error::Extraction(format!("top vector is not an eigenvector of {}(m={m})", t.names[x])));
        }
        Ok(c)
    };
    let order = graded.ideal().theta();
    let terms = 2 * order as i64 + 2;
    let hs = alg.ss_cartan();
    let mut psi_tab: Vec<Vec<Scalar>> = Vec::with_capacity(hs.len());
    for &h in hs {
        psi_tab.push((0..terms).map(|m| eigen(h, m)).collect::<Result<_>>()?);
    }
    let tau_tab: Vec<Scalar> = (0..terms).map(|m| eigen(alg.z_index(), m)).collect::<Result<_>>()?;
    let psi = |k: usize, m: i64| psi_tab[k][m as usize].clone();
    let tau = |m: i64| tau_tab[m as usize].clone();
    spec_from_sequences(alg, &psi, &tau, order, graded.offset().clone())
}
