//! Python bindings: algebras, module specs, built modules, τ-sequences,
//! the isomorphism test and the verification suites.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use superloop_core::exactnum::{format_scalar, parse_scalar, Scalar};
use superloop_core::loopeval::IdealSpec;
use superloop_core::schema::SpecFile;
use superloop_core::superalg::{build, root_datum, AlgebraKind, SuperAlgebra};
use superloop_core::taumod::{extract_spec, iso_check_g, iso_check_gprime, TauSeq};
use superloop_core::verify::{run_suites, Instance, SuiteOptions};

fn err(e: superloop_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn scalars(xs: &[String]) -> PyResult<Vec<Scalar>> {
    xs.iter().map(|s| parse_scalar(s).map_err(err)).collect()
}

fn spec_from_json(text: &str) -> PyResult<SpecFile> {
    SpecFile::parse(text).map_err(err)
}

/// sl(m,n) or C(m).
#[pyclass(frozen, module = "superloop")]
struct Algebra {
    inner: Arc<SuperAlgebra>,
}

#[pymethods]
impl Algebra {
    /// `kind` is "sl" or "C"; `n` is required for sl.
    #[new]
    #[pyo3(signature = (kind, m, n=None))]
    fn new(kind: &str, m: usize, n: Option<usize>) -> PyResult<Self> {
        let k = match (kind, n) {
            ("sl", Some(n)) => AlgebraKind::Sl { m, n },
            ("C", None) => AlgebraKind::C { m },
            _ => return Err(PyValueError::new_err("expected Algebra(\"sl\", m, n) or Algebra(\"C\", m)")),
        };
        Ok(Algebra { inner: Arc::new(build(k).map_err(err)?) })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.kind.label()
    }

    /// Positive even and odd roots, as readable strings.
    fn positive_roots(&self) -> (Vec<String>, Vec<String>) {
        let rd = root_datum(&self.inner);
        let k = self.inner.kind;
        (
            rd.even_positive.iter().map(|w| k.describe(w)).collect(),
            rd.odd_positive.iter().map(|w| k.describe(w)).collect(),
        )
    }

    fn simple_roots(&self) -> Vec<String> {
        let k = self.inner.kind;
        root_datum(&self.inner).simple.iter().map(|w| k.describe(w)).collect()
    }

    /// Whether the super-Jacobi identity and super-antisymmetry hold on all basis triples.
    fn check_jacobi(&self) -> bool {
        let t = self.inner.table();
        t.jacobi_violation().is_none() && t.antisymmetry_violation().is_none()
    }

    fn __repr__(&self) -> String {
        format!("Algebra({})", self.inner.kind.label())
    }
}

/// The module of a spec, built once.
#[pyclass(frozen, module = "superloop")]
struct Module {
    inner: Instance,
}

#[pymethods]
impl Module {
    /// Builds from a JSON spec (schema "v1").
    #[new]
    fn new(spec_json: &str) -> PyResult<Self> {
        let file = spec_from_json(spec_json)?;
        Ok(Module { inner: Instance::build("python", &file).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.vhat.module.dim()
    }

    #[getter]
    fn period(&self) -> usize {
        self.inner.period
    }

    #[getter]
    fn is_evaluation(&self) -> bool {
        self.inner.is_evaluation()
    }

    fn is_irreducible(&self) -> bool {
        self.inner.vhat.module.is_irreducible()
    }

    fn is_integrable(&self) -> bool {
        self.inner.vhat.module.is_integrable()
    }

    /// Weight multiplicities as `(weight, multiplicity)` pairs.
    fn weights(&self) -> Vec<(String, usize)> {
        let k = self.inner.algebra.kind;
        self.inner.vhat.module.weight_multiplicities().iter().map(|(w, m)| (k.describe(w), *m)).collect()
    }

    /// The spec recovered from the module's highest-weight data, as JSON.
    fn extract(&self) -> PyResult<String> {
        let v = &self.inner.vhat;
        let s = extract_spec(&self.inner.algebra, &v.graded, v.top).map_err(err)?;
        Ok(SpecFile::from_tau_spec(&s).to_json())
    }

    /// Scalar by which `z ⊗ t^s` acts on the top vector.
    fn tau(&self, s: i64) -> String {
        format_scalar(&self.inner.spec.tau.get(s))
    }
}

/// The ideal `∏(t − a_j)^{b_j}` of the Laurent polynomial ring.
#[pyclass(frozen, module = "superloop")]
struct Ideal {
    inner: IdealSpec,
}

#[pymethods]
impl Ideal {
    #[new]
    fn new(points: Vec<String>, mults: Vec<usize>) -> PyResult<Self> {
        Ok(Ideal { inner: IdealSpec::new(scalars(&points)?, mults).map_err(err)? })
    }

    /// Coefficients `c_0..c_θ` of the monic generator.
    fn coeffs(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(format_scalar).collect()
    }

    /// `t^k` reduced modulo the ideal, as coefficients of `1, t, …, t^{θ−1}`.
    fn power_mod(&self, k: i64) -> Vec<String> {
        self.inner.power_mod(k).iter().map(format_scalar).collect()
    }

    fn __repr__(&self) -> String {
        format!("Ideal({})", self.inner)
    }
}

/// `τ_lo..=τ_hi` for the recurrence of the ideal with initial window `τ_0..τ_{θ−1}`.
#[pyfunction]
fn tau_sequence(ideal: &Ideal, window: Vec<String>, lo: i64, hi: i64) -> PyResult<Vec<String>> {
    let t = TauSeq::new(ideal.inner.clone(), scalars(&window)?).map_err(err)?;
    Ok(t.values(lo, hi).iter().map(format_scalar).collect())
}

/// Whether τ satisfies the recurrence of the radical of its ideal.
#[pyfunction]
fn is_evaluation(ideal: &Ideal, window: Vec<String>) -> PyResult<bool> {
    let t = TauSeq::new(ideal.inner.clone(), scalars(&window)?).map_err(err)?;
    Ok(superloop_core::taumod::is_evaluation(&t))
}

type IsoResult = Option<(String, Vec<(usize, usize)>, bool)>;

/// Isomorphism test of two JSON specs: `None`, or `(κ, σ, iso_without_d)`.
#[pyfunction]
fn iso(spec_a: &str, spec_b: &str) -> PyResult<IsoResult> {
    let (a, b) = (spec_from_json(spec_a)?, spec_from_json(spec_b)?);
    if a.algebra != b.algebra {
        return Err(PyValueError::new_err("specs are over different algebras"));
    }
    let alg = build(a.algebra).map_err(err)?;
    let (s1, s2) = (a.to_tau_spec(&alg).map_err(err)?, b.to_tau_spec(&alg).map_err(err)?);
    let gprime = iso_check_gprime(&s1, &s2).map_err(err)?;
    Ok(iso_check_g(&alg, &s1, &s2).map_err(err)?.map(|w| (format_scalar(&w.kappa), w.sigma, gprime)))
}

/// Runs verification suites; returns one JSON report per check.
#[pyfunction]
#[pyo3(signature = (suites=vec!["all".to_string()]))]
fn verify(py: Python<'_>, suites: Vec<String>) -> PyResult<Vec<String>> {
    let reports = py
        .detach(|| run_suites(&suites, &SuiteOptions::default(), &|_| {}))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(reports.iter().map(|r| r.to_json_line()).collect())
}

#[pymodule]
fn superloop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SCHEMA_VERSION", superloop_core::schema::SCHEMA_VERSION)?;
    m.add_class::<Algebra>()?;
    m.add_class::<Module>()?;
    m.add_class::<Ideal>()?;
    m.add_function(wrap_pyfunction!(tau_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(is_evaluation, m)?)?;
    m.add_function(wrap_pyfunction!(iso, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
