use std::sync::Arc;

use serde_json::json;

use crate::error::Result;
use crate::loopeval::{evaluation_module, EvaluationModule};
use crate::schema::{ModuleKind, SpecFile};
use crate::superalg::{build, SuperAlgebra};
use crate::taumod::{induce_and_reduce, is_evaluation, TauModuleSpec, VhatModule};

/// A named module spec of the built-in regression corpus.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: SpecFile,
}

fn entry(name: &str, value: serde_json::Value) -> CorpusEntry {
    let mut value = value;
    value["schema"] = json!("v1");
    let spec = SpecFile::parse(&value.to_string()).expect("corpus spec");
    CorpusEntry { name: name.into(), spec }
}

/// Modules over sl(2,1) and C(3) covering evaluation modules, period-2 loop
/// modules, and τ-modules of evaluation and non-evaluation type.
pub fn corpus() -> Vec<CorpusEntry> {
    let sl = json!({"type": "sl", "m": 2, "n": 1});
    let c3 = json!({"type": "C", "m": 3});
    vec![
        entry("sl21-trivial", json!({"algebra": sl, "kind": "tau", "lambda": [[0, 0, 0]], "a": ["1"], "tau_window": ["0"]})),
        entry("sl21-eval-natural", json!({"algebra": sl, "kind": "evaluation", "lambda": [[1, 0, 0]], "a": ["2"]})),
        entry(
            "sl21-eval-two-point",
            json!({"algebra": sl, "kind": "evaluation", "lambda": [[1, 0, 0], ["2", "0", "-1/2"]], "a": ["1", "-1/2"]}),
        ),
        entry("sl21-loop-r2", json!({"algebra": sl, "kind": "loop", "lambda": [[1, 0, 0], [1, 0, 0]], "a": ["1", "-1"]})),
        entry(
            "sl21-loop-r2-shifted",
            json!({"algebra": sl, "kind": "loop", "lambda": [[1, 0, 0], [1, 0, 0]], "a": ["3", "-3"], "b_offset": "1/2"}),
        ),
        entry(
            "sl21-tau-linear",
            json!({"algebra": sl, "kind": "tau", "lambda": [[0, 0, 0]], "a": ["1"], "mults": [2], "tau_window": ["0", "1"]}),
        ),
        entry(
            "sl21-tau-weighted",
            json!({"algebra": sl, "kind": "tau", "lambda": [[1, 0, 0]], "a": ["2"], "mults": [2], "tau_window": ["1", "3"]}),
        ),
        entry(
            "sl21-tau-eval-type",
            json!({"algebra": sl, "kind": "tau", "lambda": [[1, 0, 0]], "a": ["2"], "mults": [2], "tau_window": ["1", "2"]}),
        ),
        entry(
            "sl21-tau-two-point",
            json!({"algebra": sl, "kind": "tau", "lambda": [[1, 0, 0], [0, 0, 0]], "a": ["1", "-1"], "mults": [1, 2],
                   "tau_window": ["2", "0", "-1"], "b_offset": "1"}),
        ),
        entry("c3-eval-natural", json!({"algebra": c3, "kind": "evaluation", "lambda": [[1, 0, 0]], "a": ["3"]})),
        entry("c3-loop-r2", json!({"algebra": c3, "kind": "loop", "lambda": [[1, 0, 0], [1, 0, 0]], "a": ["1", "-1"]})),
        entry(
            "c3-tau-linear",
            json!({"algebra": c3, "kind": "tau", "lambda": [[0, 0, 0]], "a": ["1"], "mults": [2], "tau_window": ["0", "1"]}),
        ),
        entry(
            "c3-tau-sp4",
            json!({"algebra": c3, "kind": "tau", "lambda": [[0, 1, 0]], "a": ["2"], "tau_window": ["2"]}),
        ),
    ]
}

/// A corpus entry with everything the checks need, built once.
pub struct Instance {
    pub name: String,
    pub file: SpecFile,
    pub algebra: Arc<SuperAlgebra>,
    pub spec: TauModuleSpec,
    pub vhat: VhatModule,
    /// The tensor-product realization, for evaluation and loop specs.
    pub evaluation: Option<EvaluationModule>,
    pub period: usize,
}

impl Instance {
    pub fn build(name: &str, file: &SpecFile) -> Result<Instance> {
        let algebra = Arc::new(build(file.algebra)?);
        let spec = file.to_tau_spec(&algebra)?;
        let vhat = induce_and_reduce(&algebra, &spec)?;
        let evaluation = match file.kind {
            ModuleKind::Evaluation | ModuleKind::Loop => Some(evaluation_module(&algebra, &file.lambda, &file.a)?),
            ModuleKind::Tau => None,
        };
        let period = spec.period(&algebra)?;
        Ok(Instance { name: name.into(), file: file.clone(), algebra, spec, vhat, evaluation, period })
    }

    pub fn is_evaluation(&self) -> bool {
        is_evaluation(&self.spec.tau)
    }
}
