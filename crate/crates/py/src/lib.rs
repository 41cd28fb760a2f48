//! Python module `negabeta`: a thin wrapper over the Rust library. Structured
//! results come back as dicts with the same keys as the CLI's JSON output.

use negabeta::expansion::{boundary_strings, expand_real, is_admissible_in, DEFAULT_BUDGET};
use negabeta::harness::{describe_base, scan_rationals, verify_closed_forms, Predicate};
use negabeta::periodicity::{find_period_multiplier, is_purely_periodic, pure_periodic_certificate, Budgets, CertificateOutcome};
use negabeta::quadratic::membership_zmb;
use negabeta::text::parse_rational;
use negabeta::{BaseContext, EventuallyPeriodicString, QuadFamily};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::{json, Value};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_bound_py_any(py)?,
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_bound_py_any(py)?,
            (None, Some(u)) => u.into_bound_py_any(py)?,
            _ => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py)?,
        },
        Value::String(s) => s.into_bound_py_any(py)?,
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn budgets(budget: usize) -> Budgets {
    Budgets {
        expand_budget: budget,
        ..Budgets::default()
    }
}

/// A base b > 1 given by its minimal polynomial (largest real root).
#[pyclass(name = "Base", frozen, module = "negabeta")]
struct PyBase {
    inner: BaseContext,
}

#[pymethods]
impl PyBase {
    /// Polynomial as `x^2-3*x+1` or `[1,-3,1]`.
    #[new]
    fn new(poly: &str) -> PyResult<Self> {
        Ok(PyBase {
            inner: BaseContext::from_poly_str(poly).map_err(err)?,
        })
    }

    /// b^2 = m b - 1 for family "minus", b^2 = m b + 1 for "plus".
    #[staticmethod]
    fn quadratic(family: &str, m: u32) -> PyResult<Self> {
        let f: QuadFamily = family.parse().map_err(err)?;
        Ok(PyBase {
            inner: BaseContext::quadratic(f, m).map_err(err)?,
        })
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta_f64()
    }

    #[getter]
    fn minpoly(&self) -> String {
        self.inner.minpoly().to_string()
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.family().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Base({})", describe_base(&self.inner))
    }

    /// (lower, upper limit) of the admissibility condition, as `pre(period)^w`.
    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn boundary_strings(&self, budget: usize) -> PyResult<(String, String)> {
        let r = boundary_strings(&self.inner, budget).map_err(err)?;
        Ok((r.lower.to_omega_string(), r.upper_limit.to_omega_string()))
    }

    /// Expansion of `p/q` or a polynomial in b.
    #[pyo3(signature = (x, budget = DEFAULT_BUDGET))]
    fn expand<'py>(&self, py: Python<'py>, x: &str, budget: usize) -> PyResult<Bound<'py, PyAny>> {
        let x = self.inner.parse_element(x).map_err(err)?;
        let e = expand_real(&x, budget).map_err(err)?;
        let mut v = serde_json::to_value(&e).map_err(err)?;
        v["omega"] = json!(e.digits.to_omega_string());
        to_py(py, &v)
    }

    /// `pre|period` or a finite word (followed by 0^w).
    #[pyo3(signature = (word, budget = DEFAULT_BUDGET))]
    fn is_admissible(&self, word: &str, budget: usize) -> PyResult<bool> {
        let s: EventuallyPeriodicString = word.parse().map_err(err)?;
        is_admissible_in(&s, &self.inner, budget).map_err(err)
    }

    #[pyo3(signature = (x, budget = DEFAULT_BUDGET))]
    fn is_purely_periodic(&self, x: &str, budget: usize) -> PyResult<bool> {
        let x = self.inner.parse_element(x).map_err(err)?;
        is_purely_periodic(&x, budget).map_err(err)
    }

    /// Quadratic bases only: whether z in Z[b] has no negative-exponent digits.
    fn in_zmb(&self, z: &str) -> PyResult<bool> {
        let z = self.inner.parse_element(z).map_err(err)?;
        membership_zmb(&z).map_err(err)
    }

    fn find_n(&self, q: u64) -> PyResult<u64> {
        if q == 0 {
            return Err(err("q must be >= 1"));
        }
        find_period_multiplier(q, &self.inner).map_err(err)
    }

    /// {"certified": bool, "certificate" | "refusal": {...}} for a rational.
    #[pyo3(signature = (x, budget = DEFAULT_BUDGET))]
    fn certify<'py>(&self, py: Python<'py>, x: &str, budget: usize) -> PyResult<Bound<'py, PyAny>> {
        let x = parse_rational(x).map_err(err)?;
        let v = match pure_periodic_certificate(&x, &self.inner, budgets(budget)).map_err(err)? {
            CertificateOutcome::Certified(c) => json!({"certified": true, "certificate": c}),
            CertificateOutcome::Refused(r) => json!({"certified": false, "refusal": r}),
        };
        to_py(py, &v)
    }

    /// Scan summary for every reduced p/q in the interval with q <= qmax.
    /// Quadratic bases are checked against the family's expectation.
    #[pyo3(signature = (qmax, budget = DEFAULT_BUDGET))]
    fn scan<'py>(&self, py: Python<'py>, qmax: u64, budget: usize) -> PyResult<Bound<'py, PyAny>> {
        let predicate = if self.inner.family().quadratic().is_some() {
            Predicate::Quadratic
        } else {
            Predicate::None
        };
        let r = scan_rationals(&self.inner, qmax, &predicate, budgets(budget));
        to_py(py, &serde_json::to_value(&r).map_err(err)?)
    }
}

/// Closed-form expansion tables for minus m in 3..=minus_max, plus m in 1..=plus_max.
#[pyfunction]
#[pyo3(name = "verify_closed_forms", signature = (minus_max = 12, plus_max = 12, budget = DEFAULT_BUDGET))]
fn verify_closed_forms_py<'py>(py: Python<'py>, minus_max: u32, plus_max: u32, budget: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = verify_closed_forms(3..=minus_max, 1..=plus_max, budget).map_err(err)?;
    to_py(py, &serde_json::to_value(&r).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "negabeta")]
fn negabeta_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBase>()?;
    m.add_function(wrap_pyfunction!(verify_closed_forms_py, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
