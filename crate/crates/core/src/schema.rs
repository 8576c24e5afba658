//! JSON encodings shared by the command line and the Python bindings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactnum::{format_scalar, parse_scalar, Scalar};
use crate::repcore::Weight;
use crate::superalg::{AlgebraKind, SuperAlgebra};
use crate::taumod::TauModuleSpec;

pub const SCHEMA_VERSION: &str = "v1";

pub fn ser_scalar<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    format_scalar(x).serialize(s)
}

pub fn ser_scalars<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    xs.iter().map(format_scalar).collect::<Vec<_>>().serialize(s)
}

fn scalar_from_value(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => parse_scalar(&n.to_string()),
        other => Err(Error::ParseScalar(other.to_string())),
    }
}

pub fn de_scalar<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
    scalar_from_value(&Value::deserialize(d)?).map_err(D::Error::custom)
}

pub fn de_scalars<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
    let raw: Vec<Value> = Vec::deserialize(d)?;
    raw.iter().map(scalar_from_value).collect::<Result<_>>().map_err(D::Error::custom)
}

fn de_opt_scalars<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Scalar>>, D::Error> {
    de_scalars(d).map(Some)
}

fn zero() -> Scalar {
    Scalar::from_integer(0.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    /// `λ` are full 𝔤-weights; the module is `V(λ_1) ⊗ ⋯ ⊗ V(λ_K)` at the points.
    Evaluation,
    /// As `Evaluation`, viewed as the graded loop module `V ⊗ L`.
    Loop,
    /// `λ` are 𝔤_ss-weights and the z-data is the τ window.
    Tau,
}

/// A module spec file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub schema: String,
    pub algebra: AlgebraKind,
    pub kind: ModuleKind,
    pub lambda: Vec<Weight>,
    #[serde(serialize_with = "ser_scalars", deserialize_with = "de_scalars")]
    pub a: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mults: Option<Vec<usize>>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_scalars",
        deserialize_with = "de_opt_scalars"
    )]
    pub tau_window: Option<Vec<Scalar>>,
    #[serde(default = "zero", serialize_with = "ser_scalar", deserialize_with = "de_scalar")]
    pub b_offset: Scalar,
}

fn ser_opt_scalars<S: Serializer>(xs: &Option<Vec<Scalar>>, s: S) -> Result<S::Ok, S::Error> {
    match xs {
        Some(v) => ser_scalars(v, s),
        None => s.serialize_none(),
    }
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        match value.get("schema").and_then(Value::as_str) {
            Some(SCHEMA_VERSION) => {}
            Some(other) => return Err(Error::Schema(format!("unsupported schema version {other:?}, expected \"v1\""))),
            None => return Err(Error::Schema("missing \"schema\": \"v1\"".into())),
        }
        serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// The τ-module presentation of this spec.
    pub fn to_tau_spec(&self, alg: &SuperAlgebra) -> Result<TauModuleSpec> {
        if alg.kind != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        match self.kind {
            ModuleKind::Evaluation | ModuleKind::Loop => {
                if let Some(m) = &self.mults {
                    if m.iter().any(|&b| b != 1) {
                        return Err(Error::InvalidSpec("evaluation specs have all multiplicities 1".into()));
                    }
                }
                if self.tau_window.is_some() {
                    return Err(Error::InvalidSpec("evaluation specs take z-data from the weights, not tau_window".into()));
                }
                TauModuleSpec::from_evaluation(alg, &self.lambda, &self.a, self.b_offset.clone())
            }
            ModuleKind::Tau => {
                let mults = self.mults.clone().unwrap_or_else(|| vec![1; self.a.len()]);
                let theta: usize = mults.iter().sum();
                let window = self.tau_window.clone().unwrap_or_else(|| vec![zero(); theta]);
                TauModuleSpec::new(alg, self.lambda.clone(), self.a.clone(), mults, window, self.b_offset.clone())
            }
        }
    }

    /// Spec file of kind `tau` describing a τ-module spec.
    pub fn from_tau_spec(spec: &TauModuleSpec) -> SpecFile {
        SpecFile {
            schema: SCHEMA_VERSION.into(),
            algebra: spec.kind,
            kind: ModuleKind::Tau,
            lambda: spec.lambdas.clone(),
            a: spec.points().to_vec(),
            mults: Some(spec.ideal().mults().to_vec()),
            tau_window: Some(spec.tau.window()),
            b_offset: spec.offset.clone(),
        }
    }
}
