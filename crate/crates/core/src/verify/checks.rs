use serde_json::json;

use super::report::CheckReport;
use crate::exactnum::scalar::format_scalar;
use crate::exactnum::{int, Scalar, SparseVec, Subspace};
use crate::loopeval::{decompose_loop, EvaluationModule, GradedLoopModule};
use crate::repcore::WeightModule;
use crate::schema::SpecFile;
use crate::superalg::{StructureTable, SuperAlgebra};
use crate::taumod::{
    extract_spec, induce_and_reduce, iso_check_g, iso_check_gprime, lifted_annihilator_witness, normalize,
    TauModuleSpec, VhatModule,
};

fn vec_json(v: &SparseVec) -> serde_json::Value {
    json!(v.iter().map(|(i, c)| json!([i, format_scalar(c)])).collect::<Vec<_>>())
}

/// Super-antisymmetry and super-Jacobi on all basis pairs and triples.
pub fn check_structure(t: &StructureTable, instance: &str) -> CheckReport {
    const NAME: &str = "structure";
    if let Some((i, j)) = t.antisymmetry_violation() {
        return CheckReport::fail(NAME, instance, "super-antisymmetry fails", json!({"pair": [t.names[i], t.names[j]]}));
    }
    if let Some((i, j, k)) = t.jacobi_violation() {
        let res = t.jacobi_residual(i, j, k);
        return CheckReport::fail(
            NAME,
            instance,
            "super-Jacobi fails",
            json!({"triple": [t.names[i], t.names[j], t.names[k]], "residual": vec_json(&res)}),
        );
    }
    CheckReport::pass(NAME, instance, format!("dim {}: all {} basis triples satisfy super-Jacobi", t.dim(), t.dim().pow(3)))
}

/// Smallest `k` such that every product of `k` odd lowering operators kills `v`.
pub fn check_odd_nilpotency(m: &WeightModule, v: &SparseVec, instance: &str) -> CheckReport {
    const NAME: &str = "odd_nilpotency";
    let t = m.algebra();
    let ops: Vec<usize> = t.lowering.iter().copied().filter(|&x| t.parity[x].is_odd()).collect();
    let mut layer = Subspace::span(m.dim(), std::slice::from_ref(v));
    let mut k = 0;
    while !layer.is_zero() {
        if k > m.dim() {
            return CheckReport::fail(
                NAME,
                instance,
                format!("odd lowering products of length {k} still act nonzero"),
                json!({"length": k, "surviving": vec_json(&layer.basis()[0])}),
            );
        }
        let images: Vec<SparseVec> =
            layer.basis().iter().flat_map(|b| ops.iter().map(move |&g| m.act(g, b))).collect();
        layer = Subspace::span(m.dim(), &images);
        k += 1;
    }
    CheckReport::pass(NAME, instance, format!("k = {k} (dim {})", m.dim()))
}

/// Certifies integrability and irreducibility, then finds the vectors killed
/// by all raising operators.
pub fn check_hw_exists(m: &WeightModule, instance: &str) -> CheckReport {
    const NAME: &str = "hw_exists";
    if let Some(&x) = m.algebra().even_root_vectors().iter().find(|&&x| m.action(x).nilpotency_index().is_none()) {
        return CheckReport::fail(NAME, instance, "not integrable", json!({"non_nilpotent": m.algebra().names[x]}));
    }
    let sing = m.singular_space();
    if sing.dim() == 0 {
        return CheckReport::fail(NAME, instance, "no vector is killed by the raising operators", json!({"singular_dim": 0}));
    }
    if sing.dim() > 1 {
        return CheckReport::fail(
            NAME,
            instance,
            format!("singular space has dimension {}: the module is not irreducible", sing.dim()),
            json!({"singular_dim": sing.dim(), "basis": sing.basis().iter().map(vec_json).collect::<Vec<_>>()}),
        );
    }
    let v = &sing.basis()[0];
    let generated = m.closure(std::slice::from_ref(v)).dim();
    if generated != m.dim() {
        return CheckReport::fail(
            NAME,
            instance,
            "the singular vector does not generate the module",
            json!({"generated": generated, "dim": m.dim()}),
        );
    }
    CheckReport::pass(NAME, instance, format!("unique highest weight vector {} generating dim {}", m.weight(v.leading().map(|(i, _)| i).unwrap_or(0)), m.dim()))
}

/// Zero-weight even elements of the acting algebra: the image of `T₀`.
fn t0_ops(t: &StructureTable) -> Vec<usize> {
    (0..t.dim()).filter(|&i| !t.parity[i].is_odd() && t.weights[i].is_zero()).collect()
}

/// The `T₀`-orbit span of `v` is `T₀`-stable and each of its basis vectors regenerates `v`.
pub fn check_t0_irreducible(m: &WeightModule, v: &SparseVec, instance: &str) -> CheckReport {
    const NAME: &str = "t0_irreducible";
    let ops = t0_ops(m.algebra());
    let orbit = m.closure_under(std::slice::from_ref(v), &ops);
    for u in orbit.basis() {
        let back = m.closure_under(std::slice::from_ref(u), &ops);
        if !back.contains(v).unwrap_or(false) {
            return CheckReport::fail(
                NAME,
                instance,
                format!("orbit of dimension {} is reducible: a vector does not regenerate v", orbit.dim()),
                json!({"vector": vec_json(u), "orbit_dim": orbit.dim()}),
            );
        }
    }
    CheckReport::pass(NAME, instance, format!("T0-orbit of dimension {}", orbit.dim()))
}

/// Graded version on `V ⊗ L`: the orbit of `v(0)` under `h(m)` (and `d`) on
/// the window, with every orbit basis vector regenerating `v(0)`.
pub fn check_t0_graded(g: &GradedLoopModule, v: &SparseVec, lo: i64, hi: i64, instance: &str) -> CheckReport {
    const NAME: &str = "t0_irreducible_graded";
    let t = g.module().algebra();
    let span = hi - lo;
    let hs: Vec<usize> = t0_ops(t).into_iter().filter(|&i| t.degree[i] == 0).collect();
    let ops: Vec<(usize, i64)> = hs.iter().flat_map(|&h| (-span..=span).map(move |m| (h, m))).collect();
    let orbit = g.closure_with(&[(0, v.clone())], &ops, lo, hi);
    let dims: Vec<(i64, usize)> = orbit.iter().map(|(s, sp)| (*s, sp.dim())).filter(|(_, d)| *d > 0).collect();
    for (s, sp) in &orbit {
        for u in sp.basis() {
            let back = g.closure_with(&[(*s, u.clone())], &ops, lo, hi);
            if !back[&0].contains(v).unwrap_or(false) {
                return CheckReport::fail(
                    NAME,
                    instance,
                    format!("orbit vector in slice {s} does not regenerate v(0)"),
                    json!({"slice": s, "vector": vec_json(u)}),
                );
            }
        }
    }
    CheckReport::pass(NAME, instance, format!("orbit slices (degree, dim): {dims:?}"))
}

/// `x ⊗ P(t)·t^s` acts by zero on an evaluation module, computed from the
/// slot actions before any reduction mod I.
pub fn check_annihilator_eval(e: &EvaluationModule, instance: &str) -> CheckReport {
    const NAME: &str = "annihilator";
    let p = e.algebra.ideal().generator();
    let theta = e.algebra.ideal().theta() as i64;
    let names = &e.algebra.base().table().names;
    for x in 0..e.algebra.base_dim() {
        for s in -1..theta {
            let a = e.laurent_action(x, &p.shifted(s));
            if let Some((r, c, val)) = a.first_nonzero() {
                return CheckReport::fail(
                    NAME,
                    instance,
                    "x ⊗ P(t)t^s acts nonzero",
                    json!({"element": names[x], "shift": s, "entry": [r, c, format_scalar(&val)]}),
                );
            }
        }
    }
    CheckReport::pass(NAME, instance, format!("x ⊗ P(t)t^s = 0 for all x, -1 ≤ s < {theta}"))
}

/// `(𝔤 ⊗ I)V(ψ,τ) = 0`, checked over the larger quotient by `I·(t − a_1)`,
/// together with the scalar identity `Σ c_i τ_{i+s} = 0` for `z ⊗ P(t)t^s`.
pub fn check_annihilator_tau(alg: &std::sync::Arc<SuperAlgebra>, v: &VhatModule, instance: &str) -> CheckReport {
    const NAME: &str = "annihilator";
    let c = v.spec.ideal().coeffs();
    for s in -3..=3i64 {
        let acc: Scalar = c.iter().enumerate().map(|(i, ci)| ci * v.spec.tau.get(s + i as i64)).sum();
        if acc != int(0) {
            return CheckReport::fail(NAME, instance, "τ violates its recurrence", json!({"shift": s, "value": format_scalar(&acc)}));
        }
    }
    match lifted_annihilator_witness(alg, &v.spec) {
        Ok(None) => CheckReport::pass(NAME, instance, "x ⊗ P(t) acts by zero over I·(t − a_1)"),
        Ok(Some(w)) => CheckReport::fail(
            NAME,
            instance,
            "x ⊗ P(t) acts nonzero",
            json!({"element": w.element, "entry": [w.row, w.col, format_scalar(&w.value)]}),
        ),
        Err(e) => CheckReport::error(NAME, instance, &e),
    }
}

/// `(𝔤 ⊗ I′)V(ψ,τ) = 0` for the radical `I′`: the evaluation criterion.
pub fn check_radical_annihilator(v: &VhatModule, instance: &str) -> CheckReport {
    const NAME: &str = "radical_annihilator";
    match v.radical_witness() {
        None => CheckReport::pass(NAME, instance, "𝔤 ⊗ I′ acts by zero: evaluation module"),
        Some(w) => CheckReport::fail(
            NAME,
            instance,
            format!("{} acts nonzero: not an evaluation module", w.element),
            json!({"element": w.element, "entry": [w.row, w.col, format_scalar(&w.value)]}),
        ),
    }
}

/// `V ⊗ L = ⊕_{i<r} U(G)v(i)`, certified slice by slice on `lo..=hi`, with
/// spot checks that vectors of each component regenerate its generator.
pub fn check_loop_decomposition(g: &GradedLoopModule, top: usize, r: usize, lo: i64, hi: i64, instance: &str) -> CheckReport {
    const NAME: &str = "loop_decomposition";
    if !(1..=2).contains(&r) {
        return CheckReport::fail(NAME, instance, format!("period {r} outside 1..=2"), json!({"r": r}));
    }
    let v = SparseVec::unit(top);
    let comps = match decompose_loop(g, &v, r, lo, hi) {
        Ok(c) => c,
        Err(e) => return CheckReport::error(NAME, instance, &e),
    };
    if comps.len() != r {
        return CheckReport::fail(NAME, instance, "wrong component count", json!({"components": comps.len(), "r": r}));
    }
    let margin = 2 * (r + g.ideal().theta()) as i64;
    for c in &comps {
        for s in [lo, c.index, hi] {
            for u in c.slices[&s].basis().iter().take(2) {
                match g.regenerates((s, u), (c.index, &v), lo - margin, hi + margin) {
                    Ok(true) => {}
                    _ => {
                        return CheckReport::fail(
                            NAME,
                            instance,
                            format!("a vector of component {} in slice {s} does not regenerate v({})", c.index, c.index),
                            json!({"component": c.index, "slice": s, "vector": vec_json(u)}),
                        )
                    }
                }
            }
        }
    }
    let dims: Vec<Vec<usize>> = comps.iter().map(|c| c.slice_dims().into_values().collect()).collect();
    CheckReport::pass(NAME, instance, format!("{r} components on [{lo}, {hi}], slice dims {dims:?}"))
}

/// Recovers `(λ̲, a̲, τ, b)` from the module, compares with the normalized
/// generating spec, rebuilds `V̂(φ,τ)` and compares characters and the
/// `T₀`-scalars on the top vector.
pub fn check_main_theorem(
    alg: &std::sync::Arc<SuperAlgebra>,
    g: &GradedLoopModule,
    top: usize,
    expected: &TauModuleSpec,
    instance: &str,
) -> CheckReport {
    const NAME: &str = "main_theorem";
    let run = || -> crate::Result<CheckReport> {
        let got = extract_spec(alg, g, top)?;
        let want = normalize(alg, expected)?;
        if got != want {
            return Ok(CheckReport::fail(
                NAME,
                instance,
                "recovered spec differs from the normalized input",
                json!({"recovered": SpecFile::from_tau_spec(&got), "expected": SpecFile::from_tau_spec(&want)}),
            ));
        }
        if !iso_check_gprime(&got, expected)? || iso_check_g(alg, &got, expected)?.is_none() {
            return Ok(CheckReport::fail(NAME, instance, "isomorphism criteria reject the recovered spec", json!({})));
        }
        let rebuilt = induce_and_reduce(alg, &got)?;
        let m = g.module();
        if rebuilt.module.dim() != m.dim() || rebuilt.module.weight_multiplicities() != m.weight_multiplicities() {
            return Ok(CheckReport::fail(
                NAME,
                instance,
                "rebuilt module has a different character",
                json!({"dim": m.dim(), "rebuilt_dim": rebuilt.module.dim()}),
            ));
        }
        let theta = g.ideal().theta().max(got.theta()) as i64;
        let (v, w) = (SparseVec::unit(top), SparseVec::unit(rebuilt.top));
        let t = alg.table();
        for &h in &t.cartan {
            for mm in -theta..=2 * theta {
                let a = g.x_action(h, mm).mul_vec(&v).get(top);
                let b = rebuilt.graded.x_action(h, mm).mul_vec(&w).get(rebuilt.top);
                if a != b {
                    return Ok(CheckReport::fail(
                        NAME,
                        instance,
                        "T0 scalars on the top vectors differ",
                        json!({"element": t.names[h], "m": mm, "values": [format_scalar(&a), format_scalar(&b)]}),
                    ));
                }
            }
        }
        Ok(CheckReport::pass(
            NAME,
            instance,
            format!("recovered {} point(s), θ = {}, dim {}", got.k(), got.theta(), m.dim()),
        ))
    };
    run().unwrap_or_else(|e| CheckReport::error(NAME, instance, &e))
}

