use std::sync::Arc;

use num_traits::Zero;

use super::spec::TauModuleSpec;
use crate::error::{Error, Result};
use crate::exactnum::scalar::pow;
use crate::exactnum::{Matrix, Scalar};
use crate::loopeval::{loop_module, quotient_algebra, GradedLoopModule, IdealSpec, QuotientAlgebra};
use crate::repcore::hw::tensor_twisted;
use crate::repcore::{
    hw_module_ss, induce, irreducible_quotient, tensor, DominantWeight, ParabolicModule, WeightModule,
};
use crate::superalg::{StructureTable, SuperAlgebra, WeightFrame};

/// `V(ψ,τ)` together with the data it was built from.
pub struct VhatModule {
    pub spec: TauModuleSpec,
    pub quotient: QuotientAlgebra,
    pub v0: WeightModule,
    /// `M(ψ,τ) = Λ(𝔤₋₁ ⊗ L/I) ⊗ V⁰`.
    pub induced: WeightModule,
    /// The irreducible head `V(ψ,τ)`.
    pub module: Arc<WeightModule>,
    /// Basis index of the image of the top vector `w`.
    pub top: usize,
    pub graded: GradedLoopModule,
}

/// The subalgebra `𝔤₀ ⊗ L/I` of a quotient table, with the positions of its
/// basis elements in the quotient.
pub fn even_quotient(q: &QuotientAlgebra) -> Result<(Arc<StructureTable>, Vec<usize>)> {
    let t = q.table();
    let idx: Vec<usize> = (0..t.dim()).filter(|&i| t.grade[i] == 0).collect();
    let even = t.subalgebra(&idx, format!("{}₀", t.label), WeightFrame::Full, &t.cartan)?;
    Ok((Arc::new(even), idx))
}

/// `V⁰(ψ,τ)`: the tensor product of the 𝔤_ss-modules `V(λ_j)` with
/// `x ⊗ t^s` acting as `Σ_j a_j^s` on slot `j`, and `z ⊗ t^s` acting by `τ_s`.
/// It is a module for `𝔤₀ ⊗ L/I`; `𝔤₊₁ ⊗ L/I` acts on it by zero.
pub fn build_v0(alg: &SuperAlgebra, q: &QuotientAlgebra, spec: &TauModuleSpec) -> Result<WeightModule> {
    if alg.kind != spec.kind {
        return Err(Error::AlgebraMismatch);
    }
    let (even, _) = even_quotient(q)?;
    let ss = alg.ss_table();
    let factors: Vec<WeightModule> = spec
        .lambdas
        .iter()
        .map(|l| DominantWeight::new(alg, l).and_then(|d| hw_module_ss(alg, &d)))
        .collect::<Result<_>>()?;
    let refs: Vec<&WeightModule> = factors.iter().collect();
    let mut ss_pos = vec![0usize; alg.dim()];
    for (k, &b) in ss.base.iter().enumerate() {
        ss_pos[b] = k;
    }
    let z = alg.z_index();
    let points = spec.points();
    let coeffs: Vec<Vec<(usize, Scalar)>> = (0..even.dim())
        .map(|k| {
            if even.base[k] == z {
                Vec::new()
            } else {
                points.iter().enumerate().map(|(j, a)| (j, pow(a, even.degree[k] as i64))).collect()
            }
        })
        .collect();
    let twisted = tensor_twisted(&even, &refs, |k, _| ss_pos[even.base[k]], &coeffs);
    let plain = tensor(&refs)?;
    let n = plain.dim();
    let tau0 = spec.tau.get(0);
    let weights = plain.weights().iter().map(|w| alg.kind.full_from_ss(w, &tau0)).collect();
    let actions: Vec<Matrix> = (0..even.dim())
        .map(|k| {
            if even.base[k] == z {
                Matrix::scalar(n, &spec.tau.get(even.degree[k] as i64))
            } else {
                twisted.action(k).clone()
            }
        })
        .collect();
    WeightModule::new(even, weights, plain.parity().to_vec(), actions)
}

/// Builds `M(ψ,τ)` by inducing `V⁰` along `𝔤₋₁ ⊗ L/I`, takes its irreducible
/// head `V(ψ,τ)`, and wraps it as the graded module `V̂(φ,τ)`.
pub fn induce_and_reduce(alg: &Arc<SuperAlgebra>, spec: &TauModuleSpec) -> Result<VhatModule> {
    let q = quotient_algebra(alg, spec.ideal());
    let v0 = build_v0(alg, &q, spec)?;
    let t = q.table();
    let (_, even_idx) = even_quotient(&q)?;
    let mut actions: Vec<Option<Matrix>> = vec![None; t.dim()];
    for (k, &i) in even_idx.iter().enumerate() {
        actions[i] = Some(v0.action(k).clone());
    }
    for i in 0..t.dim() {
        if t.grade[i] == 1 {
            actions[i] = Some(Matrix::zeros(v0.dim(), v0.dim()));
        }
    }
    let nil: Vec<usize> = (0..t.dim()).filter(|&i| t.grade[i] == -1).collect();
    let pm = ParabolicModule { weights: v0.weights().to_vec(), parity: v0.parity().to_vec(), actions };
    let induced = induce(t, &nil, &pm, None)?;
    let top_m = induced.top_index()?;
    let quotient = irreducible_quotient(&induced, top_m)?;
    let module = Arc::new(quotient.module);
    let top = module.top_index()?;
    let graded = loop_module(module.clone(), spec.ideal(), spec.offset.clone())?;
    Ok(VhatModule { spec: spec.clone(), quotient: q, v0, induced, module, top, graded })
}

/// A nonzero matrix entry `(x, row, col, value)` of some `x ⊗ f` acting on a module.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionWitness {
    pub element: String,
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
}

impl VhatModule {
    /// First nonzero action of `x ⊗ f` over basis elements `x` of 𝔤, for `f`
    /// ranging over `gens` (Laurent polynomials given as classes mod I).
    pub fn find_nonzero_action(&self, gens: &[(String, Vec<Scalar>)]) -> Option<ActionWitness> {
        let d = self.quotient.base_dim();
        for x in 0..d {
            for (label, f) in gens {
                let mut a = Matrix::zeros(self.module.dim(), self.module.dim());
                for (s, c) in f.iter().enumerate() {
                    if !c.is_zero() {
                        a.add_scaled(c, self.module.action(self.quotient.index(x, s)));
                    }
                }
                if let Some((row, col, value)) = a.first_nonzero() {
                    let name = &self.quotient.base().table().names[x];
                    return Some(ActionWitness { element: format!("{name}⊗{label}"), row, col, value });
                }
            }
        }
        None
    }

    /// Classes mod I of `g(t)·t^s`, `0 ≤ s < θ`, for a polynomial `g` in `t`.
    pub fn ideal_classes(&self, g: &IdealSpec) -> Vec<(String, Vec<Scalar>)> {
        let ideal = self.spec.ideal();
        (0..ideal.theta() as i64)
            .map(|s| (format!("{g}·t^{s}"), ideal.reduce(&g.generator().shifted(s))))
            .collect()
    }

    /// Witness that `𝔤 ⊗ I′` does not annihilate `V(ψ,τ)` (radical `I′`), if any.
    pub fn radical_witness(&self) -> Option<ActionWitness> {
        self.find_nonzero_action(&self.ideal_classes(&self.spec.ideal().radical()))
    }
}

/// Builds the module over the ideal `J = I·(t − a_1)` and looks for a nonzero
/// action of `x ⊗ P(t)` there. In the quotient by `I` itself this action is
/// zero by construction; over `J` it is a genuine statement about `V(ψ,τ)`.
pub fn lifted_annihilator_witness(alg: &Arc<SuperAlgebra>, spec: &TauModuleSpec) -> Result<Option<ActionWitness>> {
    let ideal = spec.ideal();
    let mut mults = ideal.mults().to_vec();
    mults[0] += 1;
    let bigger = IdealSpec::new(ideal.points().to_vec(), mults)?;
    let tau = spec.tau.over(&bigger)?;
    let lifted = TauModuleSpec::from_parts(alg, spec.lambdas.clone(), tau, spec.offset.clone())?;
    let v = induce_and_reduce(alg, &lifted)?;
    // I/J is one-dimensional, spanned by the class of P itself
    let gens = vec![(ideal.to_string(), bigger.reduce(&ideal.generator()))];
    Ok(v.find_nonzero_action(&gens))
}
