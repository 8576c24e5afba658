use serde::Serialize;

use super::spec::TauModuleSpec;
use crate::error::{Error, Result};
use crate::exactnum::recurrence::berlekamp_massey;
use crate::exactnum::scalar::{pow, to_i64};
use crate::exactnum::Scalar;
use crate::repcore::Weight;
use crate::superalg::SuperAlgebra;

const MAX_POINTS: usize = 8;

/// Witness of `V̂(φ,τ) ≅ V̂(φ′,τ′)`: the scaling `a′ = κ a_σ`, and `σ` as
/// pairs `(index in the second spec, index in the first)` over points where λ ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    #[serde(serialize_with = "crate::schema::ser_scalar")]
    pub kappa: Scalar,
    pub sigma: Vec<(usize, usize)>,
}

fn support(s: &TauModuleSpec) -> Vec<(usize, &Weight, &Scalar)> {
    s.lambdas
        .iter()
        .zip(s.points())
        .enumerate()
        .filter(|(_, (l, _))| !l.is_zero())
        .map(|(j, (l, a))| (j, l, a))
        .collect()
}

fn check_bound(s1: &TauModuleSpec, s2: &TauModuleSpec) -> Result<()> {
    for s in [s1, s2] {
        if s.k() > MAX_POINTS {
            return Err(Error::PermutationBound(s.k()));
        }
    }
    Ok(())
}

/// Backtracking search for `σ` with `λ′_i = λ_{σ(i)}` and `a′_i = κ a_{σ(i)}`.
fn find_sigma(s1: &TauModuleSpec, s2: &TauModuleSpec, kappa: &Scalar) -> Option<Vec<(usize, usize)>> {
    let e1 = support(s1);
    let e2 = support(s2);
    if e1.len() != e2.len() {
        return None;
    }
    fn go(
        i: usize,
        e1: &[(usize, &Weight, &Scalar)],
        e2: &[(usize, &Weight, &Scalar)],
        kappa: &Scalar,
        used: &mut Vec<bool>,
        out: &mut Vec<(usize, usize)>,
    ) -> bool {
        if i == e2.len() {
            return true;
        }
        let (j2, l2, a2) = e2[i];
        for (p, &(j1, l1, a1)) in e1.iter().enumerate() {
            if used[p] || l1 != l2 || &(kappa * a1) != a2 {
                continue;
            }
            used[p] = true;
            out.push((j2, j1));
            if go(i + 1, e1, e2, kappa, used, out) {
                return true;
            }
            out.pop();
            used[p] = false;
        }
        false
    }
    let mut used = vec![false; e1.len()];
    let mut out = Vec::new();
    go(0, &e1, &e2, kappa, &mut used, &mut out).then_some(out)
}

/// `τ′_i = κ^i τ_i` on `θ + θ′` consecutive indices; both sides satisfy a
/// common recurrence of that order, so this decides equality for all `i`.
fn tau_scaled_equal(s1: &TauModuleSpec, s2: &TauModuleSpec, kappa: &Scalar) -> bool {
    let n = (s1.theta() + s2.theta()) as i64;
    (0..n).all(|i| s2.tau.get(i) == pow(kappa, i) * s1.tau.get(i))
}

/// Isomorphism of `V(ψ,τ)` and `V(ψ′,τ′)` over the loop algebra without the
/// degree derivation: equal τ and ψ-data equal up to a permutation.
pub fn iso_check_gprime(s1: &TauModuleSpec, s2: &TauModuleSpec) -> Result<bool> {
    if s1.kind != s2.kind {
        return Err(Error::AlgebraMismatch);
    }
    check_bound(s1, s2)?;
    let one = Scalar::from_integer(1.into());
    Ok(tau_scaled_equal(s1, s2, &one) && find_sigma(s1, s2, &one).is_some())
}

/// Roots of the minimal recurrence of τ, read off by Berlekamp–Massey.
fn tau_roots(s: &TauModuleSpec) -> Vec<Scalar> {
    let seq = s.tau.values(0, 2 * s.theta() as i64 - 1);
    berlekamp_massey(&seq).rational_roots().unwrap_or_default().into_iter().map(|(a, _)| a).collect()
}

fn candidate_kappas(s1: &TauModuleSpec, s2: &TauModuleSpec) -> Vec<Scalar> {
    let one = Scalar::from_integer(1.into());
    let mut out: Vec<Scalar> = match (support(s1).first(), tau_roots(s1).first()) {
        (Some(&(_, l1, a1)), _) => support(s2).iter().filter(|(_, l2, _)| *l2 == l1).map(|(_, _, a2)| *a2 / a1).collect(),
        (None, Some(r1)) => tau_roots(s2).iter().map(|r2| r2 / r1).collect(),
        (None, None) => vec![one.clone()],
    };
    out.sort();
    out.dedup();
    if let Some(p) = out.iter().position(|k| *k == one) {
        let k = out.remove(p);
        out.insert(0, k);
    }
    out
}

/// Isomorphism of the graded modules `V̂(φ,τ)` and `V̂(φ′,τ′)` over the full
/// loop superalgebra: `a′ = κσ(a)`, `λ′ = σ(λ)`, `τ′_i = κ^i τ_i` and
/// `b′ ≡ b (mod r)` for the period `r` of the combined ψ/τ character.
///
/// With `r = 0` the module is trivial and only `b′ = b` is accepted.
pub fn iso_check_g(alg: &SuperAlgebra, s1: &TauModuleSpec, s2: &TauModuleSpec) -> Result<Option<IsoWitness>> {
    if s1.kind != s2.kind || alg.kind != s1.kind {
        return Err(Error::AlgebraMismatch);
    }
    check_bound(s1, s2)?;
    let r = s1.period(alg)?;
    if s2.period(alg)? != r {
        return Ok(None);
    }
    let db = &s2.offset - &s1.offset;
    let shift_ok = if r == 0 {
        db == Scalar::from_integer(0.into())
    } else {
        let q = db / Scalar::from_integer((r as i64).into());
        q.is_integer() && to_i64(&q).is_some()
    };
    if !shift_ok {
        return Ok(None);
    }
    for kappa in candidate_kappas(s1, s2) {
        if !tau_scaled_equal(s1, s2, &kappa) {
            continue;
        }
        if let Some(sigma) = find_sigma(s1, s2, &kappa) {
            return Ok(Some(IsoWitness { kappa, sigma }));
        }
    }
    Ok(None)
}
