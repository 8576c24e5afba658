use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use super::checks::*;
use super::corpus::{corpus, CorpusEntry, Instance};
use super::report::{timed, CheckReport};
use crate::error::{Error, Result};
use crate::exactnum::{int, Matrix, SparseVec};
use crate::loopeval::{evaluation_module, loop_module, GradedLoopModule};
use crate::repcore::Weight;
use crate::superalg::{build, build_sl, AlgebraKind, SuperAlgebra};
use crate::taumod::induce_and_reduce;

pub const SUITES: [&str; 8] = ["structure", "nilpotency", "hw", "t0", "annihilator", "decomposition", "main", "controls"];

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "SUPERLOOP_THREADS";

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Degree window for graded checks.
    pub window: (i64, i64),
    /// Corrupt one structure constant of sl(2,1) in the structure suite.
    pub inject_fault: bool,
    /// Specs checked in addition to the built-in corpus.
    pub extra: Vec<CorpusEntry>,
    /// Skip the built-in corpus.
    pub no_corpus: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { window: (-4, 4), inject_fault: false, extra: Vec::new(), no_corpus: false }
    }
}

/// Expands `all` and rejects unknown names.
pub fn resolve_suites(names: &[String]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(SUITES);
        } else if let Some(s) = SUITES.iter().find(|s| **s == n.as_str()) {
            out.push(*s);
        } else {
            return Err(Error::InvalidSpec(format!("unknown suite {n:?}; expected one of {} or all", SUITES.join(", "))));
        }
    }
    out.dedup();
    Ok(out)
}

/// Worker pool sized by `SUPERLOOP_THREADS` (rayon's default when unset or invalid).
pub fn thread_pool() -> rayon::ThreadPool {
    let n = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
}

type Job<'a> = Box<dyn Fn() -> CheckReport + Send + Sync + 'a>;

fn corrupted(alg: &SuperAlgebra) -> crate::superalg::StructureTable {
    let t = alg.table();
    let (i, j) = (t.raising[0], t.lowering[0]);
    let wrong = t.bracket(i, j).scaled(&int(2));
    t.with_corrupted_bracket(i, j, wrong)
}

fn eval_graded(inst: &Instance) -> Option<GradedLoopModule> {
    let e = inst.evaluation.as_ref()?;
    loop_module(Arc::new(e.module.clone()), e.algebra.ideal(), inst.spec.offset.clone()).ok()
}

fn instance_jobs<'a>(suite: &str, inst: &'a Instance, window: (i64, i64)) -> Vec<Job<'a>> {
    let name = inst.name.as_str();
    let top = SparseVec::unit(inst.vhat.top);
    let mut jobs: Vec<Job<'a>> = Vec::new();
    match suite {
        "nilpotency" => {
            let v = top.clone();
            jobs.push(Box::new(move || check_odd_nilpotency(&inst.vhat.module, &v, name)));
            if let Some(e) = &inst.evaluation {
                jobs.push(Box::new(move || match e.module.top_index() {
                    Ok(t) => check_odd_nilpotency(&e.module, &SparseVec::unit(t), &format!("{name}/tensor")),
                    Err(err) => CheckReport::error("odd_nilpotency", name, &err),
                }));
            }
        }
        "hw" => {
            jobs.push(Box::new(move || check_hw_exists(&inst.vhat.module, name)));
            if let Some(e) = &inst.evaluation {
                jobs.push(Box::new(move || check_hw_exists(&e.module, &format!("{name}/tensor"))));
            }
        }
        "t0" => {
            let v = top.clone();
            jobs.push(Box::new(move || check_t0_irreducible(&inst.vhat.module, &v, name)));
            if inst.period == 2 {
                let v = top.clone();
                jobs.push(Box::new(move || check_t0_graded(&inst.vhat.graded, &v, window.0, window.1, name)));
            }
        }
        "annihilator" => {
            jobs.push(Box::new(move || check_annihilator_tau(&inst.algebra, &inst.vhat, name)));
            if let Some(e) = &inst.evaluation {
                jobs.push(Box::new(move || check_annihilator_eval(e, &format!("{name}/tensor"))));
            }
            if inst.is_evaluation() {
                jobs.push(Box::new(move || check_radical_annihilator(&inst.vhat, name)));
            }
        }
        "decomposition" => {
            if (1..=2).contains(&inst.period) {
                jobs.push(Box::new(move || match eval_graded(inst) {
                    Some(g) => {
                        let t = g.module().top_index().unwrap_or(0);
                        check_loop_decomposition(&g, t, inst.period, window.0, window.1, &format!("{name}/tensor"))
                    }
                    None => check_loop_decomposition(&inst.vhat.graded, inst.vhat.top, inst.period, window.0, window.1, name),
                }));
            }
        }
        "main" => {
            jobs.push(Box::new(move || check_main_theorem(&inst.algebra, &inst.vhat.graded, inst.vhat.top, &inst.spec, name)));
            if inst.evaluation.is_some() {
                jobs.push(Box::new(move || match eval_graded(inst) {
                    Some(g) => match g.module().top_index() {
                        Ok(t) => check_main_theorem(&inst.algebra, &g, t, &inst.spec, &format!("{name}/tensor")),
                        Err(err) => CheckReport::error("main_theorem", name, &err),
                    },
                    None => CheckReport::fail("main_theorem", name, "no graded tensor module", json!({})),
                }));
            }
        }
        "controls" if !inst.is_evaluation() => {
            jobs.push(Box::new(move || check_radical_annihilator(&inst.vhat, &format!("control:{name}")).control()));
        }
        _ => {}
    }
    jobs
}

fn w(xs: &[i64]) -> Weight {
    Weight::from_ints(xs)
}

/// Negative controls not tied to a corpus instance.
fn standalone_controls(window: (i64, i64)) -> Vec<Job<'static>> {
    let mut jobs: Vec<Job<'static>> = Vec::new();
    jobs.push(Box::new(|| {
        let a = build_sl(2, 1).expect("sl(2,1)");
        check_structure(&corrupted(&a), "control:sl(2,1) with a corrupted structure constant").control()
    }));
    jobs.push(Box::new(|| {
        let name = "control:direct sum V ⊕ V";
        let run = || -> Result<CheckReport> {
            let a = Arc::new(build_sl(2, 1)?);
            let e = evaluation_module(&a, &[w(&[1, 0, 0])], &[int(2)])?;
            Ok(check_hw_exists(&e.module.direct_sum(&e.module)?, name).control())
        };
        run().unwrap_or_else(|e| CheckReport::error("hw_exists", name, &e))
    }));
    jobs.push(Box::new(|| {
        let name = "control:V(λ)@1 ⊕ V(λ)@2 with v = v₁ + v₂";
        let run = || -> Result<CheckReport> {
            let a = Arc::new(build_sl(2, 1)?);
            let nat = w(&[1, 0, 0]);
            let zero = w(&[0, 0, 0]);
            let pts = [int(1), int(2)];
            let e1 = evaluation_module(&a, &[nat.clone(), zero.clone()], &pts)?;
            let e2 = evaluation_module(&a, &[zero, nat], &pts)?;
            let sum = e1.module.direct_sum(&e2.module)?;
            let n1 = e1.module.dim();
            let v = SparseVec::from_pairs([(e1.module.top_index()?, int(1)), (n1 + e2.module.top_index()?, int(1))]);
            Ok(check_t0_irreducible(&sum, &v, name).control())
        };
        run().unwrap_or_else(|e| CheckReport::error("t0_irreducible", name, &e))
    }));
    jobs.push(Box::new(|| {
        let name = "control:odd lowering operator replaced by the identity";
        let run = || -> Result<CheckReport> {
            let a = Arc::new(build_sl(2, 1)?);
            let e = evaluation_module(&a, &[w(&[1, 0, 0])], &[int(2)])?;
            let t = e.module.algebra();
            let x = *t.lowering.iter().find(|&&x| t.parity[x].is_odd()).expect("odd lowering element");
            let m = e.module.with_action(x, Matrix::identity(e.module.dim()));
            Ok(check_odd_nilpotency(&m, &SparseVec::unit(e.module.top_index()?), name).control())
        };
        run().unwrap_or_else(|e| CheckReport::error("odd_nilpotency", name, &e))
    }));
    jobs.push(Box::new(move || {
        let name = "control:r = 1 claimed for a period-2 loop module";
        let run = || -> Result<CheckReport> {
            let a = Arc::new(build_sl(2, 1)?);
            let nat = w(&[1, 0, 0]);
            let e = evaluation_module(&a, &[nat.clone(), nat], &[int(1), int(-1)])?;
            let g = loop_module(Arc::new(e.module.clone()), e.algebra.ideal(), int(0))?;
            Ok(check_loop_decomposition(&g, e.module.top_index()?, 1, window.0, window.1, name).control())
        };
        run().unwrap_or_else(|e| CheckReport::error("loop_decomposition", name, &e))
    }));
    jobs.push(Box::new(|| {
        let name = "control:module compared against a spec with doubled τ";
        let run = || -> Result<CheckReport> {
            let a = Arc::new(build_sl(2, 1)?);
            let s = crate::taumod::TauModuleSpec::new(&a, vec![w(&[0, 0, 0])], vec![int(1)], vec![2], vec![int(0), int(1)], int(0))?;
            let wrong = crate::taumod::TauModuleSpec::new(&a, vec![w(&[0, 0, 0])], vec![int(1)], vec![2], vec![int(0), int(2)], int(0))?;
            let v = induce_and_reduce(&a, &s)?;
            Ok(check_main_theorem(&a, &v.graded, v.top, &wrong, name).control())
        };
        run().unwrap_or_else(|e| CheckReport::error("main_theorem", name, &e))
    }));
    jobs
}

fn structure_jobs(inject_fault: bool) -> Vec<Job<'static>> {
    let kinds = [AlgebraKind::Sl { m: 2, n: 1 }, AlgebraKind::Sl { m: 3, n: 1 }, AlgebraKind::C { m: 3 }];
    kinds
        .into_iter()
        .map(move |k| -> Job<'static> {
            Box::new(move || match build(k) {
                Ok(a) if inject_fault && k == (AlgebraKind::Sl { m: 2, n: 1 }) => check_structure(&corrupted(&a), &k.label()),
                Ok(a) => check_structure(a.table(), &k.label()),
                Err(e) => CheckReport::error("structure", &k.label(), &e),
            })
        })
        .collect()
}

/// Runs the named suites over the corpus (plus extra specs) on the worker pool.
/// Reports come back in a deterministic order.
pub fn run_suites(names: &[String], opts: &SuiteOptions, progress: &(dyn Fn(&str) + Sync)) -> Result<Vec<CheckReport>> {
    let suites = resolve_suites(names)?;
    let pool = thread_pool();
    pool.install(|| {
        let needs_instances = suites.iter().any(|s| !matches!(*s, "structure"));
        let mut entries: Vec<CorpusEntry> = if opts.no_corpus { Vec::new() } else { corpus() };
        entries.extend(opts.extra.iter().cloned());
        let mut reports = Vec::new();
        let built: Vec<(String, Result<Instance>)> = if needs_instances {
            progress(&format!("building {} modules", entries.len()));
            entries
                .par_iter()
                .map(|e| {
                    let r = Instance::build(&e.name, &e.spec);
                    progress(&format!("built {}", e.name));
                    (e.name.clone(), r)
                })
                .collect()
        } else {
            Vec::new()
        };
        let mut instances = Vec::new();
        for (name, r) in built {
            match r {
                Ok(i) => instances.push(i),
                Err(e) => reports.push(CheckReport::error("build", &name, &e)),
            }
        }
        for suite in &suites {
            let mut jobs: Vec<Job<'_>> = Vec::new();
            match *suite {
                "structure" => jobs.extend(structure_jobs(opts.inject_fault)),
                other => {
                    for inst in &instances {
                        jobs.extend(instance_jobs(other, inst, opts.window));
                    }
                    if other == "controls" {
                        jobs.extend(standalone_controls(opts.window));
                    }
                }
            }
            progress(&format!("suite {suite}: {} checks", jobs.len()));
            let out: Vec<CheckReport> = jobs.par_iter().map(timed).collect();
            reports.extend(out);
        }
        Ok(reports)
    })
}
