use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one check on one instance. A failing verdict always carries a witness.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    /// The verdict a correct implementation produces: `fail` for negative controls.
    pub expected: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub detail: String,
    pub millis: u64,
}

impl CheckReport {
    pub fn pass(check: &str, instance: &str, detail: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            instance: instance.into(),
            verdict: Verdict::Pass,
            expected: Verdict::Pass,
            witness: None,
            detail: detail.into(),
            millis: 0,
        }
    }

    pub fn fail(check: &str, instance: &str, detail: impl Into<String>, witness: Value) -> Self {
        CheckReport {
            verdict: Verdict::Fail,
            witness: Some(witness),
            ..CheckReport::pass(check, instance, detail)
        }
    }

    pub fn error(check: &str, instance: &str, err: &crate::Error) -> Self {
        CheckReport::fail(check, instance, format!("error: {err}"), Value::String(err.to_string()))
    }

    /// Marks the report as a negative control, which must fail.
    pub fn control(mut self) -> Self {
        self.expected = Verdict::Fail;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Whether the verdict is the expected one.
    pub fn ok(&self) -> bool {
        self.verdict == self.expected
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Runs `f` and stamps the elapsed time on its report.
pub fn timed<F: FnOnce() -> CheckReport>(f: F) -> CheckReport {
    let start = Instant::now();
    let mut r = f();
    r.millis = start.elapsed().as_millis() as u64;
    r
}
