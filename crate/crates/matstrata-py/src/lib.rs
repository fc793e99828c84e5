//! Python bindings for the matstrata library.
//!
//! The compiled module is named `matstrata_py` and exposes the main
//! operations: building a solution-set report for a monic polynomial,
//! inspecting strata, sampling solutions, verifying candidate matrices,
//! classifying solutions into strata, and the commutator-rank oracle.
//!
//! Matrices cross the boundary in the same shape as the JSON interchange
//! format: a list of rows, with integer, `"p/q"` string, or float entries.

use matstrata::matrix::{matrix_from_json_exact, matrix_from_json_f64};
use matstrata::orbit::{DEFAULT_CLASSIFY_TOL, DEFAULT_RANK_TOL, DEFAULT_VERIFY_TOL};
use matstrata::rat::parse_rational;
use matstrata::strata::report_to_json;
use matstrata::{
    canonical_matrix, matrix_from_json, matrix_to_json, Matrix, RankMode, SampleConfig, SampleMode,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyList, PyTuple};
use serde_json::Value;

fn to_py_err(e: matstrata::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts a Python list-of-rows into the JSON interchange value.
fn json_from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    if let Ok(list) = obj.cast::<PyList>() {
        let mut items = Vec::with_capacity(list.len());
        for item in list.iter() {
            items.push(json_from_py(&item)?);
        }
        return Ok(Value::Array(items));
    }
    if let Ok(tuple) = obj.cast::<PyTuple>() {
        let mut items = Vec::with_capacity(tuple.len());
        for item in tuple.iter() {
            items.push(json_from_py(&item)?);
        }
        return Ok(Value::Array(items));
    }
    if let Ok(text) = obj.extract::<String>() {
        return Ok(Value::String(text));
    }
    if obj.cast::<pyo3::types::PyBool>().is_ok() {
        return Err(PyValueError::new_err("matrix entries must be numbers or strings"));
    }
    if obj.cast::<pyo3::types::PyInt>().is_ok() {
        return match obj.extract::<i64>() {
            Ok(n) => Ok(Value::Number(n.into())),
            // Integers beyond i64 stay exact through the string form.
            Err(_) => Ok(Value::String(obj.str()?.to_string())),
        };
    }
    if let Ok(x) = obj.extract::<f64>() {
        return serde_json::Number::from_f64(x)
            .map(Value::Number)
            .ok_or_else(|| PyValueError::new_err("matrix entries must be finite"));
    }
    Err(PyValueError::new_err(format!(
        "unsupported matrix entry of type {}",
        obj.get_type().name()?
    )))
}

/// Converts a JSON interchange value back into Python lists and scalars.
fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let obj = match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any().unbind()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any().unbind()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let converted: Vec<Py<PyAny>> =
                items.iter().map(|item| json_to_py(py, item)).collect::<PyResult<_>>()?;
            PyList::new(py, converted)?.into_any().unbind()
        }
        _ => return Err(PyValueError::new_err("unsupported value in matrix encoding")),
    };
    Ok(obj)
}

fn matrix_from_input(obj: &Bound<'_, PyAny>, m: Option<usize>, input: &str) -> PyResult<Matrix> {
    let v = json_from_py(obj)?;
    let mat = match input {
        "auto" => matrix_from_json(&v, m),
        "exact" => matrix_from_json_exact(&v, m).map(Matrix::Exact),
        "float" => matrix_from_json_f64(&v, m).map(Matrix::Float),
        other => {
            return Err(PyValueError::new_err(format!(
                "input must be auto, exact, or float, not {other}"
            )))
        }
    };
    mat.map_err(to_py_err)
}

fn parse_mode(mode: &str) -> PyResult<SampleMode> {
    match mode {
        "exact" => Ok(SampleMode::Exact),
        "float" => Ok(SampleMode::Float),
        other => Err(PyValueError::new_err(format!("mode must be exact or float, not {other}"))),
    }
}

/// One stratum of the solution set: a similarity orbit of canonical forms.
#[pyclass(module = "matstrata_py")]
struct Stratum {
    /// Canonical key such as `"R(r0:2,1)|R(r1:1)"`.
    #[pyo3(get)]
    key: String,
    /// Human-readable name such as `"J_1(0, 0, 1)"`.
    #[pyo3(get)]
    display_name: String,
    /// Dimension of the centralizer group of the canonical form.
    #[pyo3(get)]
    centralizer_dim: usize,
    /// Dimension of the similarity orbit, `m^2 - centralizer_dim`.
    #[pyo3(get)]
    orbit_dim: usize,
    canonical: Matrix,
}

#[pymethods]
impl Stratum {
    /// Returns the canonical matrix as a list of rows.
    fn canonical_matrix(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        json_to_py(py, &matrix_to_json(&self.canonical))
    }

    fn __repr__(&self) -> String {
        format!("Stratum({}, orbit_dim={})", self.key, self.orbit_dim)
    }
}

/// Outcome of testing whether a matrix satisfies the equation.
#[pyclass(module = "matstrata_py")]
struct Verification {
    /// Whether the residual passed the applicable test.
    #[pyo3(get)]
    is_solution: bool,
    /// Largest absolute entry of the evaluated polynomial.
    #[pyo3(get)]
    residual: f64,
    /// Whether the test ran in exact rational arithmetic.
    #[pyo3(get)]
    exact: bool,
}

#[pymethods]
impl Verification {
    fn __repr__(&self) -> String {
        format!(
            "Verification(is_solution={}, residual={:e}, exact={})",
            self.is_solution, self.residual, self.exact
        )
    }
}

/// Result of classifying a solution into the stratification.
#[pyclass(module = "matstrata_py")]
struct Classification {
    /// Matched stratum key, or `"unrecognized"`.
    #[pyo3(get)]
    stratum: String,
    /// Residual of the solution test that ran alongside classification.
    #[pyo3(get)]
    residual: f64,
    /// Matched eigenvalues as `(re, im, root)` tuples.
    #[pyo3(get)]
    eigenvalue_matches: Vec<(f64, f64, String)>,
    /// Rank sequences `rank((X - rI)^k)` per profiled root.
    #[pyo3(get)]
    rank_profiles: Vec<(String, Vec<usize>)>,
}

#[pymethods]
impl Classification {
    fn __repr__(&self) -> String {
        format!("Classification({}, residual={:e})", self.stratum, self.residual)
    }
}

/// Structure report for the solution set of X^n + a_{n-1} X^{n-1} + ... + a_0 I = O.
#[pyclass(module = "matstrata_py")]
struct Report {
    inner: matstrata::SolutionSetReport,
}

#[pymethods]
impl Report {
    #[new]
    fn new(polynomial: &str, m: usize) -> PyResult<Self> {
        let p = matstrata::parse_polynomial(polynomial).map_err(to_py_err)?;
        let inner = matstrata::solution_set_report(&p, m).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    /// The monic polynomial, rendered as an expression in x.
    #[getter]
    fn polynomial(&self) -> String {
        self.inner.polynomial.to_string()
    }

    /// Matrix size m.
    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    /// Covering dimension of the solution set; -1 when the set is empty.
    #[getter]
    fn dim(&self) -> i64 {
        self.inner.dim_s
    }

    /// Whether the solution set is empty.
    #[getter]
    fn empty(&self) -> bool {
        self.inner.empty
    }

    /// All strata, ordered by the canonical enumeration.
    #[getter]
    fn strata(&self) -> Vec<Stratum> {
        self.inner
            .strata
            .iter()
            .map(|st| Stratum {
                key: st.stratum_id.clone(),
                display_name: st.form.display_name(&self.inner.roots),
                centralizer_dim: st.centralizer_dim,
                orbit_dim: st.orbit_dim,
                canonical: canonical_matrix(&st.form, &self.inner.roots),
            })
            .collect()
    }

    /// Serializes the report to the stable JSON schema.
    fn to_json(&self) -> String {
        report_to_json(&self.inner)
    }

    /// Covering dimension of the union of the named strata.
    fn subset_dimension(&self, keys: Vec<String>) -> PyResult<i64> {
        matstrata::subset_dimension(&self.inner, &keys).map_err(to_py_err)
    }

    /// Draws deterministic solutions from one stratum as lists of rows.
    ///
    /// Defaults to the stratum of maximal orbit dimension. Exact mode
    /// requires all relevant roots to be rational.
    #[pyo3(signature = (stratum=None, seed=0, count=1, mode="exact", entry_range="1"))]
    fn sample(
        &self,
        py: Python<'_>,
        stratum: Option<&str>,
        seed: u64,
        count: usize,
        mode: &str,
        entry_range: &str,
    ) -> PyResult<Py<PyAny>> {
        let st = self.pick_stratum(stratum)?;
        let range = parse_rational(entry_range).map_err(to_py_err)?;
        let cfg = SampleConfig::new(seed, count, range, parse_mode(mode)?).map_err(to_py_err)?;
        let samples =
            matstrata::sample_solutions(&st.form, &self.inner.roots, &cfg).map_err(to_py_err)?;
        let values: Vec<Value> = samples.iter().map(matrix_to_json).collect();
        json_to_py(py, &Value::Array(values))
    }

    /// Tests whether a matrix satisfies the equation.
    #[pyo3(signature = (matrix, tol=DEFAULT_VERIFY_TOL, input="auto"))]
    fn verify(&self, matrix: &Bound<'_, PyAny>, tol: f64, input: &str) -> PyResult<Verification> {
        let x = matrix_from_input(matrix, Some(self.inner.m), input)?;
        let v = matstrata::verify_solution(&self.inner.polynomial, &x, tol);
        Ok(Verification { is_solution: v.is_solution, residual: v.residual, exact: v.exact })
    }

    /// Classifies a solution into the stratification by rank profiles.
    #[pyo3(signature = (matrix, tol=DEFAULT_CLASSIFY_TOL, input="auto"))]
    fn classify(
        &self,
        matrix: &Bound<'_, PyAny>,
        tol: f64,
        input: &str,
    ) -> PyResult<Classification> {
        let x = matrix_from_input(matrix, Some(self.inner.m), input)?;
        let c = matstrata::classify_solution(&x, &self.inner, tol).map_err(to_py_err)?;
        Ok(Classification {
            stratum: c.stratum_id,
            residual: c.residual,
            eigenvalue_matches: c
                .eigenvalue_matches
                .into_iter()
                .map(|e| (e.re, e.im, e.root))
                .collect(),
            rank_profiles: c.rank_profiles.into_iter().map(|r| (r.root, r.ranks)).collect(),
        })
    }

    /// Estimates a stratum's dimension as the modal commutator rank over samples.
    #[pyo3(signature = (stratum=None, seed=0, count=20, tol=DEFAULT_RANK_TOL))]
    fn empirical_dimension(
        &self,
        stratum: Option<&str>,
        seed: u64,
        count: usize,
        tol: f64,
    ) -> PyResult<usize> {
        let st = self.pick_stratum(stratum)?;
        let cfg = SampleConfig::float(seed, count);
        matstrata::empirical_dimension(&st.form, &self.inner.roots, &cfg, tol).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Report({}, m={}, dim={}, strata={})",
            self.inner.polynomial,
            self.inner.m,
            self.inner.dim_s,
            self.inner.strata.len()
        )
    }
}

impl Report {
    fn pick_stratum(&self, key: Option<&str>) -> PyResult<&matstrata::Stratum> {
        match key {
            Some(id) => self
                .inner
                .stratum(id)
                .ok_or_else(|| to_py_err(matstrata::Error::UnknownStratum(id.to_string()))),
            None => self
                .inner
                .strata
                .iter()
                .find(|st| st.orbit_dim as i64 == self.inner.dim_s)
                .ok_or_else(|| {
                    PyValueError::new_err("the solution set is empty; nothing to sample")
                }),
        }
    }
}

/// Covering dimension of the solution set; -1 when the set is empty.
#[pyfunction]
fn dimension(polynomial: &str, m: usize) -> PyResult<i64> {
    let p = matstrata::parse_polynomial(polynomial).map_err(to_py_err)?;
    Ok(matstrata::solution_set_report(&p, m).map_err(to_py_err)?.dim_s)
}

/// Builds the structure report for a polynomial and matrix size.
#[pyfunction]
fn report(polynomial: &str, m: usize) -> PyResult<Report> {
    Report::new(polynomial, m)
}

/// Rank of the commutator map X -> JX - XJ on m x m matrices.
///
/// With `mode=None`, rational input is ranked exactly and float input by
/// thresholded singular values.
#[pyfunction]
#[pyo3(signature = (matrix, mode=None, tol=DEFAULT_RANK_TOL, input="auto"))]
fn ad_rank(
    matrix: &Bound<'_, PyAny>,
    mode: Option<&str>,
    tol: f64,
    input: &str,
) -> PyResult<usize> {
    let j = matrix_from_input(matrix, None, input)?;
    let rank_mode = match mode {
        None => {
            if j.is_exact() {
                RankMode::Exact
            } else {
                RankMode::Float
            }
        }
        Some("exact") => RankMode::Exact,
        Some("float") => RankMode::Float,
        Some(other) => {
            return Err(PyValueError::new_err(format!("mode must be exact or float, not {other}")))
        }
    };
    matstrata::ad_rank(&j, rank_mode, tol).map_err(to_py_err)
}

#[pymodule]
fn matstrata_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("DEFAULT_VERIFY_TOL", DEFAULT_VERIFY_TOL)?;
    m.add("DEFAULT_CLASSIFY_TOL", DEFAULT_CLASSIFY_TOL)?;
    m.add("DEFAULT_RANK_TOL", DEFAULT_RANK_TOL)?;
    m.add_class::<Report>()?;
    m.add_class::<Stratum>()?;
    m.add_class::<Verification>()?;
    m.add_class::<Classification>()?;
    m.add_function(wrap_pyfunction!(dimension, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(ad_rank, m)?)?;
    Ok(())
}
