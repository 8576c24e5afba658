//! Acceptance criteria 1-10. Prints one line per criterion and exits nonzero
//! if any fails. All comparisons are exact (tolerance 0); runtime limits are
//! wall-clock seconds.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superloop_core::exactnum::scalar::pow;
use superloop_core::exactnum::{frac, int, Poly, Scalar, SparseVec};
use superloop_core::loopeval::{decompose_loop, detect_period, evaluation_module, loop_module, IdealSpec, LaurentPoly};
use superloop_core::repcore::Weight;
use superloop_core::schema::ModuleKind;
use superloop_core::superalg::{build, root_datum, AlgebraKind};
use superloop_core::taumod::{induce_and_reduce, is_evaluation, iso_check_g, iso_check_gprime, tau_from_eval, TauModuleSpec, TauSeq};
use superloop_core::verify::{check_annihilator_tau, check_hw_exists, check_main_theorem, corpus, run_suites, Instance, SuiteOptions};

type Outcome = Result<String, String>;

fn w(xs: &[i64]) -> Weight {
    Weight::from_ints(xs)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

const SL21: AlgebraKind = AlgebraKind::Sl { m: 2, n: 1 };
const SL31: AlgebraKind = AlgebraKind::Sl { m: 3, n: 1 };
const C3: AlgebraKind = AlgebraKind::C { m: 3 };

fn c1_structure() -> Outcome {
    let t0 = Instant::now();
    // dim osp(2|2n) = dim so(2) + dim sp(2n) + 2·2n, here n = 2
    let osp = |n: usize| 1 + n * (2 * n + 1) + 4 * n;
    for (k, dim) in [(SL21, 8), (SL31, 15), (C3, osp(2))] {
        let a = build(k).map_err(e)?;
        ensure(a.dim() == dim, format!("dim {} = {}, expected {dim}", k.label(), a.dim()))?;
        let t = a.table();
        if let Some(v) = t.jacobi_violation() {
            return Err(format!("{}: super-Jacobi fails on {v:?}", k.label()));
        }
        ensure(t.antisymmetry_violation().is_none(), format!("{}: antisymmetry fails", k.label()))?;
    }
    let secs = t0.elapsed().as_secs_f64();
    ensure(secs < 10.0, format!("runtime {secs:.1}s"))?;
    Ok(format!("Jacobi exact on all triples; dims 8, 15, 19; {secs:.2}s < 10s"))
}

fn c2_roots() -> Outcome {
    for k in [SL21, SL31, AlgebraKind::Sl { m: 3, n: 2 }, C3, AlgebraKind::C { m: 4 }] {
        let a = build(k).map_err(e)?;
        let rd = root_datum(&a);
        let (even, odd, diag): (usize, usize, Vec<i64>) = match k {
            AlgebraKind::Sl { m, n } => {
                (m * (m - 1) / 2 + n * (n - 1) / 2, m * n, (0..m + n).map(|i| if i < m { 1 } else { -1 }).collect())
            }
            AlgebraKind::C { m } => ((m - 1) * (m - 1), 2 * (m - 1), (0..m).map(|i| if i == 0 { 1 } else { -1 }).collect()),
        };
        ensure(rd.even_positive.len() == even, format!("{}: {} even positive roots, expected {even}", k.label(), rd.even_positive.len()))?;
        ensure(rd.odd_positive.len() == odd, format!("{}: {} odd positive roots, expected {odd}", k.label(), rd.odd_positive.len()))?;
        let gram = k.gram();
        for (i, row) in gram.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { int(diag[i]) } else { int(0) };
                ensure(*x == want, format!("{}: Gram[{i}][{j}] = {x}", k.label()))?;
            }
        }
    }
    Ok("root counts and Gram matrices exact for sl(2,1), sl(3,1), sl(3,2), C(3), C(4)".into())
}

fn c3_eval_kernel() -> Outcome {
    let t0 = Instant::now();
    let a = Arc::new(build(SL21).map_err(e)?);
    let weights = [w(&[1, 0, 0]), w(&[0, 0, 1]), w(&[1, 0, 1]), w(&[0, 0, -1])];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut trials = 0;
    while trials < 12 {
        let k = rng.gen_range(1..=3usize);
        let pts: Vec<Scalar> = (0..k).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
        if pts.iter().any(|p| *p == int(0)) || pts.iter().collect::<BTreeSet<_>>().len() < k {
            continue;
        }
        let lams: Vec<Weight> = (0..k).map(|_| weights[rng.gen_range(0..weights.len())].clone()).collect();
        let ev = evaluation_module(&a, &lams, &pts).map_err(e)?;
        let p = Poly::from_roots(&pts.iter().map(|x| (x.clone(), 1)).collect::<Vec<_>>());
        for s in 0..k as i64 {
            let f = LaurentPoly::from_poly(&p).shifted(s);
            for x in 0..a.dim() {
                if let Some((r, c, v)) = ev.laurent_action(x, &f).first_nonzero() {
                    return Err(format!("points {pts:?}: x{x} ⊗ P′t^{s} has entry ({r},{c}) = {v}"));
                }
            }
        }
        trials += 1;
    }
    let secs = t0.elapsed().as_secs_f64();
    ensure(secs < 30.0, format!("runtime {secs:.1}s"))?;
    Ok(format!("{trials} random instances, K ≤ 3, all actions exactly zero; {secs:.2}s < 30s"))
}

fn c4_decomposition() -> Outcome {
    let a = Arc::new(build(SL21).map_err(e)?);
    for lam in [w(&[1, 0, 0]), w(&[1, 0, 1]), w(&[2, 0, 0])] {
        let lams = vec![lam.clone(), lam.clone()];
        let pts = vec![int(1), int(-1)];
        let r = detect_period(&a, &lams, &pts).map_err(e)?;
        ensure(r == 2, format!("λ = {lam}: period {r}"))?;
        let ev = evaluation_module(&a, &lams, &pts).map_err(e)?;
        let top = ev.module.top_index().map_err(e)?;
        let g = loop_module(Arc::new(ev.module.clone()), ev.algebra.ideal(), int(0)).map_err(e)?;
        let comps = decompose_loop(&g, &SparseVec::unit(top), r, -4, 4).map_err(e)?;
        ensure(comps.len() == 2, format!("{} components", comps.len()))?;
        let n = g.slice_dim();
        for s in -4..=4 {
            let (c0, c1) = (&comps[0].slices[&s], &comps[1].slices[&s]);
            let meet = c0.intersect(c1).dim();
            ensure(c0.dim() + c1.dim() == n && meet == 0, format!("slice {s}: {} + {} of {n}, meet {meet}", c0.dim(), c1.dim()))?;
        }
    }
    Ok("r = 2 and two components exhausting slices -4..4 with zero intersection, for λ = ε1, ε1+δ1, 2ε1".into())
}

fn c5_tau() -> Outcome {
    let sq = TauSeq::new(IdealSpec::new(vec![int(1)], vec![2]).map_err(e)?, vec![int(0), int(1)]).map_err(e)?;
    for s in -10..=10 {
        ensure(sq.get(s) == int(s), format!("(t-1)^2: τ_{s} = {}", sq.get(s)))?;
    }
    let g = TauSeq::new(IdealSpec::new(vec![int(2)], vec![1]).map_err(e)?, vec![int(1)]).map_err(e)?;
    for s in -10..=10 {
        ensure(g.get(s) == pow(&int(2), s), format!("t-2: τ_{s} = {}", g.get(s)))?;
    }
    Ok("τ_s = s and τ_s = 2^s exactly for -10 ≤ s ≤ 10".into())
}

fn c6_evaluation_criterion() -> Outcome {
    let a = Arc::new(build(SL21).map_err(e)?);
    // (i) evaluation-type τ, placed over the square of its radical so the check is not vacuous
    let pts = vec![int(2), frac(-1, 3)];
    let tau = tau_from_eval(&pts, &[int(3), frac(1, 2)]).map_err(e)?;
    ensure(is_evaluation(&tau), "tau_from_eval output fails is_evaluation")?;
    let square = IdealSpec::new(pts.clone(), vec![2, 2]).map_err(e)?;
    let lifted = tau.over(&square).map_err(e)?;
    ensure(is_evaluation(&lifted), "lifted τ fails is_evaluation")?;
    let spec = TauModuleSpec::from_parts(&a, vec![w(&[1, 0, 0]), w(&[0, 0, 0])], lifted, int(0)).map_err(e)?;
    let v = induce_and_reduce(&a, &spec).map_err(e)?;
    if let Some(wit) = v.radical_witness() {
        return Err(format!("(i) {} acts nonzero at ({}, {})", wit.element, wit.row, wit.col));
    }
    // (ii) I = (t-1)^2, τ_s = s: z ⊗ (t-1) = z⊗t − z⊗1 must act nonzero
    let spec = TauModuleSpec::new(&a, vec![w(&[0, 0, 0])], vec![int(1)], vec![2], vec![int(0), int(1)], int(0)).map_err(e)?;
    ensure(!is_evaluation(&spec.tau), "τ_s = s passes is_evaluation")?;
    let v = induce_and_reduce(&a, &spec).map_err(e)?;
    let z = a.z_index();
    let mut zt = v.module.action(v.quotient.index(z, 1)).clone();
    zt.add_scaled(&int(-1), v.module.action(v.quotient.index(z, 0)));
    let (r, c, val) = zt.first_nonzero().ok_or("z ⊗ (t-1) acts by zero")?;
    let generic = v.radical_witness().ok_or("no radical witness")?;
    Ok(format!(
        "(i) 𝔤⊗I′ kills V over I = I′²; (ii) z⊗(t-1) has entry ({r},{c}) = {val}, search witness {}",
        generic.element
    ))
}

fn instances() -> Result<Vec<Instance>, String> {
    corpus().iter().map(|c| Instance::build(&c.name, &c.spec).map_err(|x| format!("{}: {x}", c.name))).collect()
}

fn c7_annihilator(insts: &[Instance]) -> Outcome {
    let mut doubled = 0;
    for i in insts {
        let r = check_annihilator_tau(&i.algebra, &i.vhat, &i.name);
        ensure(r.passed(), format!("{}: {}", i.name, r.detail))?;
        if i.spec.ideal().mults().iter().any(|&b| b >= 2) {
            doubled += 1;
        }
    }
    ensure(doubled >= 2, format!("only {doubled} instances with b_j ≥ 2"))?;
    Ok(format!("(𝔤⊗I)V = 0 on {} corpus modules ({doubled} with b_j ≥ 2)", insts.len()))
}

fn c8_integrable_hw(insts: &[Instance]) -> Outcome {
    for i in insts {
        ensure(i.vhat.module.is_integrable(), format!("{}: not integrable", i.name))?;
        let r = check_hw_exists(&i.vhat.module, &i.name);
        ensure(r.passed(), format!("{}: {}", i.name, r.detail))?;
    }
    Ok(format!("{} corpus modules integrable with a highest weight vector", insts.len()))
}

fn c9_iso() -> Outcome {
    let a = build(SL21).map_err(e)?;
    let pts = vec![int(2), frac(1, 3)];
    let tau = TauSeq::new(IdealSpec::new(pts.clone(), vec![2, 1]).map_err(e)?, vec![int(1), int(-2), int(5)]).map_err(e)?;
    let s1 = TauModuleSpec::from_parts(&a, vec![w(&[1, 0, 0]), w(&[0, 0, 0])], tau.clone(), int(0)).map_err(e)?;
    let neg: Vec<Scalar> = pts.iter().map(|x| -x).collect();
    let twisted = TauSeq::new(IdealSpec::new(neg, vec![2, 1]).map_err(e)?, (0..3).map(|s| pow(&int(-1), s) * tau.get(s)).collect())
        .map_err(e)?;
    let s2 = TauModuleSpec::from_parts(&a, s1.lambdas.clone(), twisted, int(0)).map_err(e)?;
    let wit = iso_check_g(&a, &s1, &s2).map_err(e)?.ok_or("κ = -1 pair rejected")?;
    ensure(wit.kappa == int(-1), format!("κ = {}", wit.kappa))?;

    let t1 = TauModuleSpec::new(&a, vec![w(&[1, 0, 0])], vec![int(1)], vec![2], vec![int(1), int(2)], int(0)).map_err(e)?;
    let t2 = TauModuleSpec::new(&a, vec![w(&[1, 0, 0])], vec![int(1)], vec![2], vec![int(2), int(4)], int(0)).map_err(e)?;
    ensure(iso_check_g(&a, &t1, &t2).map_err(e)?.is_none(), "τ vs 2τ accepted")?;
    ensure(!iso_check_gprime(&t1, &t2).map_err(e)?, "τ vs 2τ accepted without d")?;

    // K = 2 swaps: (λ_j, a_j) jointly permuted is isomorphic, λ alone permuted is not
    let mk = |l1: &[i64], l2: &[i64], p1: i64, p2: i64| {
        TauModuleSpec::new(&a, vec![w(l1), w(l2)], vec![int(p1), int(p2)], vec![1, 1], vec![int(1), int(3)], int(0))
    };
    let base = mk(&[1, 0, 0], &[2, 0, 0], 2, -1).map_err(e)?;
    let joint = mk(&[2, 0, 0], &[1, 0, 0], -1, 2).map_err(e)?;
    let jw = iso_check_g(&a, &base, &joint).map_err(e)?.ok_or("joint swap rejected")?;
    ensure(jw.sigma == vec![(0, 1), (1, 0)], format!("σ = {:?}", jw.sigma))?;
    let lam_only = mk(&[2, 0, 0], &[1, 0, 0], 2, -1).map_err(e)?;
    ensure(iso_check_g(&a, &base, &lam_only).map_err(e)?.is_none(), "weight-only swap accepted")?;
    Ok(format!("κ = -1 witness σ = {:?}; τ vs 2τ rejected; K = 2 joint swap σ = {:?}, weight-only swap rejected", wit.sigma, jw.sigma))
}

fn c10_round_trip(insts: &[Instance]) -> Outcome {
    let mut n = 0;
    let mut seen: BTreeSet<(String, &'static str)> = BTreeSet::new();
    for i in insts {
        let r = check_main_theorem(&i.algebra, &i.vhat.graded, i.vhat.top, &i.spec, &i.name);
        ensure(r.passed(), format!("{}: {}", i.name, r.detail))?;
        n += 1;
        let class = match (i.file.kind, i.period, i.is_evaluation()) {
            (ModuleKind::Tau, _, false) => "non-evaluation τ",
            (_, 2, _) => "r = 2 loop",
            (_, _, true) => "evaluation",
            _ => "other",
        };
        seen.insert((i.algebra.kind.label(), class));
    }
    ensure(n >= 10, format!("only {n} round trips"))?;
    for alg in ["sl(2,1)", "C(3)"] {
        for class in ["evaluation", "r = 2 loop", "non-evaluation τ"] {
            ensure(seen.contains(&(alg.to_string(), class)), format!("no {class} instance over {alg}"))?;
        }
    }
    let t0 = Instant::now();
    let reports = run_suites(&["all".to_string()], &SuiteOptions::default(), &|_| {}).map_err(e)?;
    let secs = t0.elapsed().as_secs_f64();
    let bad: Vec<_> = reports.iter().filter(|r| !r.ok()).map(|r| format!("{} {}", r.check, r.instance)).collect();
    ensure(bad.is_empty(), format!("suite failures: {bad:?}"))?;
    ensure(secs < 300.0, format!("full suite {secs:.0}s"))?;
    Ok(format!("{n} modules round-trip; full suite {} checks in {secs:.1}s < 300s", reports.len()))
}

fn main() {
    let insts = instances();
    let corpus_dependent = |f: fn(&[Instance]) -> Outcome| -> Outcome {
        match &insts {
            Ok(i) => f(i),
            Err(x) => Err(format!("corpus build failed: {x}")),
        }
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("structure soundness", c1_structure()),
        ("root data", c2_roots()),
        ("evaluation-module kernel", c3_eval_kernel()),
        ("loop decomposition", c4_decomposition()),
        ("τ-recurrence fidelity", c5_tau()),
        ("evaluation criterion, both directions", c6_evaluation_criterion()),
        ("finite-weight annihilator", corpus_dependent(c7_annihilator)),
        ("integrability and highest weight", corpus_dependent(c8_integrable_hw)),
        ("isomorphism classification", c9_iso()),
        ("classification round trip", corpus_dependent(c10_round_trip)),
    ];
    let mut failed = 0;
    for (k, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("criterion {:>2} [PRIMARY] PASS  {name}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} [PRIMARY] FAIL  {name}: {msg}", k + 1)
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
