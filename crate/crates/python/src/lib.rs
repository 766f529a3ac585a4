//! Python bindings for `arcmld`.
//!
//! Rational values cross the boundary as strings (`"3/2"`, `"+inf"`,
//! `"-inf"`); structured inputs are accepted as the same JSON documents the
//! command line reads.

use arcmld::cli::HypersurfaceInput;
use arcmld::jet::{
    classify_polynomial, count_jet_points, jet_equations, newton_lift as lift_core, ClassifyMethod, ClassifyOptions,
    ContactQuery, Field, TruncatedArc as CoreArc, DEFAULT_EVAL_BUDGET,
};
use arcmld::monomial::{contact_codim_monomial_in, mld_monomial_in, CenterSpec, MonomialIdeal, MonomialPair as CorePair};
use arcmld::rational::{format_q, parse_q};
use arcmld::resolution::{self, PairCoefficients, ResolutionData as CoreData};
use arcmld::theorem_lab::{self, AdjunctionCase, SemicontinuityCase};
use arcmld::{Error, Q};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(arcmld_py, ArcmldError, PyValueError, "Invalid input or failed precondition.");
create_exception!(arcmld_py, BudgetExceeded, ArcmldError, "Point count would exceed the evaluation budget.");
create_exception!(arcmld_py, InvariantViolation, ArcmldError, "Two independent computations disagreed.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::InvariantViolation(_) => InvariantViolation::new_err(e.to_string()),
        other => ArcmldError::new_err(other.to_string()),
    }
}

fn json_err(e: serde_json::Error) -> PyErr {
    ArcmldError::new_err(format!("invalid JSON: {e}"))
}

fn rationals(values: &[String]) -> PyResult<Vec<Q>> {
    values.iter().map(|v| parse_q(v).map_err(py_err)).collect()
}

fn center(text: &str) -> PyResult<CenterSpec> {
    text.parse().map_err(py_err)
}

/// Log-resolution data `(k, y, z, W)` over a fixed ambient space.
#[pyclass(module = "arcmld_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct ResolutionData {
    inner: CoreData,
}

#[pymethods]
impl ResolutionData {
    #[staticmethod]
    pub fn from_json(text: &str) -> PyResult<Self> {
        let inner: CoreData = serde_json::from_str(text).map_err(json_err)?;
        inner.validate().map_err(py_err)?;
        Ok(ResolutionData { inner })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("resolution data serializes")
    }

    #[getter]
    pub fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim
    }

    #[getter]
    pub fn num_divisors(&self) -> usize {
        self.inner.s
    }

    fn __repr__(&self) -> String {
        format!("ResolutionData(ambient_dim={}, s={})", self.inner.ambient_dim, self.inner.s)
    }
}

/// `(A^d, Σ q_i Y_i)` with monomial ideals given by generator exponents.
#[pyclass(module = "arcmld_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct MonomialPair {
    inner: CorePair,
}

#[pymethods]
impl MonomialPair {
    #[new]
    #[pyo3(signature = (d, ideals=Vec::new(), q=Vec::new()))]
    pub fn new(d: usize, ideals: Vec<Vec<Vec<u64>>>, q: Vec<String>) -> PyResult<Self> {
        let ideals = ideals
            .into_iter()
            .map(|g| MonomialIdeal::new(d, g).map_err(py_err))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = CorePair { d, ideals, q: rationals(&q)? };
        inner.validate().map_err(py_err)?;
        Ok(MonomialPair { inner })
    }

    #[staticmethod]
    pub fn from_json(text: &str) -> PyResult<Self> {
        let inner: CorePair = serde_json::from_str(text).map_err(json_err)?;
        inner.validate().map_err(py_err)?;
        Ok(MonomialPair { inner })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("pair serializes")
    }

    #[getter]
    pub fn d(&self) -> usize {
        self.inner.d
    }

    fn __repr__(&self) -> String {
        format!("MonomialPair(d={}, ideals={})", self.inner.d, self.inner.ideals.len())
    }
}

/// Hypersurface `f = 0` given as a polynomial in named variables.
#[pyclass(module = "arcmld_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Hypersurface {
    inner: HypersurfaceInput,
}

#[pymethods]
impl Hypersurface {
    #[new]
    #[pyo3(signature = (variables, polynomial, nondegenerate=false, isolated=false))]
    pub fn new(variables: Vec<String>, polynomial: String, nondegenerate: bool, isolated: bool) -> PyResult<Self> {
        let inner = HypersurfaceInput {
            variables,
            polynomial,
            nondegenerate_asserted: nondegenerate,
            singular_locus_is_origin_asserted: isolated,
        };
        inner.parse().map_err(py_err)?;
        Ok(Hypersurface { inner })
    }

    #[getter]
    pub fn polynomial(&self) -> String {
        self.inner.polynomial.clone()
    }

    fn __repr__(&self) -> String {
        format!("Hypersurface({:?})", self.inner.polynomial)
    }
}

/// Truncated arc: one coefficient list per coordinate, over `Q` or `F_p`.
#[pyclass(module = "arcmld_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct TruncatedArc {
    inner: CoreArc,
}

#[pymethods]
impl TruncatedArc {
    #[new]
    #[pyo3(signature = (series, prime=None))]
    pub fn new(series: Vec<Vec<String>>, prime: Option<u64>) -> PyResult<Self> {
        let field = match prime {
            Some(p) => Field::prime(p).map_err(py_err)?,
            None => Field::Rationals,
        };
        let order = series.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1);
        let coeffs = series.iter().map(|s| rationals(s)).collect::<PyResult<Vec<_>>>()?;
        Ok(TruncatedArc { inner: CoreArc::new(field, order, coeffs).map_err(py_err)? })
    }

    #[getter]
    pub fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    pub fn series(&self) -> Vec<Vec<String>> {
        self.inner.series().iter().map(|s| s.iter().map(format_q).collect()).collect()
    }

    fn __repr__(&self) -> String {
        format!("TruncatedArc(order={}, series={:?})", self.inner.order(), self.series())
    }
}

/// Codimension of `{ord_{Y_i} ≥ m_i}` with base point in `center`.
#[pyfunction]
#[pyo3(signature = (pair, m, center="origin"))]
pub fn contact_codim(pair: &MonomialPair, m: Vec<u64>, center: &str) -> PyResult<String> {
    let p = &pair.inner;
    let r = contact_codim_monomial_in(Some(p.d), &p.ideals, &m, &self::center(center)?).map_err(py_err)?;
    Ok(r.value.to_string())
}

/// Minimal log discrepancy of a monomial pair along `center`.
#[pyfunction]
#[pyo3(signature = (pair, center="origin"))]
pub fn mld(pair: &MonomialPair, center: &str) -> PyResult<String> {
    let p = &pair.inner;
    Ok(mld_monomial_in(Some(p.d), &p.ideals, &p.q, &self::center(center)?).map_err(py_err)?.value.to_string())
}

#[pyfunction]
#[pyo3(signature = (data, q, w_is_proper=true))]
pub fn log_discrepancies(data: &ResolutionData, q: Vec<String>, w_is_proper: bool) -> PyResult<Vec<String>> {
    let coeffs = PairCoefficients::new(rationals(&q)?, w_is_proper);
    let a = resolution::log_discrepancy_coeffs(&data.inner, &coeffs).map_err(py_err)?;
    Ok(a.iter().map(format_q).collect())
}

/// Minimal log discrepancy over `W` from resolution data.
#[pyfunction]
#[pyo3(signature = (data, q, w_is_proper=true))]
pub fn mld_on_w(data: &ResolutionData, q: Vec<String>, w_is_proper: bool) -> PyResult<String> {
    let coeffs = PairCoefficients::new(rationals(&q)?, w_is_proper);
    Ok(resolution::mld_on_w(&data.inner, &coeffs).map_err(py_err)?.value.to_string())
}

/// Whether `mld ≥ tau`, decided by contact-locus codimensions.
#[pyfunction]
#[pyo3(signature = (data, q, tau, w_is_proper=true))]
pub fn mld_bound_check(data: &ResolutionData, q: Vec<String>, tau: &str, w_is_proper: bool) -> PyResult<bool> {
    let coeffs = PairCoefficients::new(rationals(&q)?, w_is_proper);
    let tau = parse_q(tau).map_err(py_err)?;
    Ok(resolution::mld_bound_check(&data.inner, &coeffs, &tau).map_err(py_err)?.verdict)
}

/// Singularity class name, e.g. `"TERMINAL"`.
#[pyfunction]
#[pyo3(signature = (h, method="newton", jet_bound=3, prime=3, budget=DEFAULT_EVAL_BUDGET))]
pub fn classify(h: &Hypersurface, method: &str, jet_bound: usize, prime: u64, budget: u64) -> PyResult<String> {
    let method = match method {
        "newton" => ClassifyMethod::Newton,
        "jets" => ClassifyMethod::Jets,
        "both" => ClassifyMethod::Both,
        other => return Err(ArcmldError::new_err(format!("unknown method {other:?}"))),
    };
    let (f, newton) = h.inner.parse().map_err(py_err)?;
    let opts = ClassifyOptions { method, jet_bound, prime, budget };
    let report = classify_polynomial(&newton, &f, &opts).map_err(py_err)?;
    Ok(serde_json::to_value(report.class).expect("class serializes").as_str().unwrap_or_default().to_string())
}

/// Number of `F_p`-points of the level-`m` jet scheme, optionally over `center`.
#[pyfunction]
#[pyo3(signature = (h, m, prime, center=None, budget=DEFAULT_EVAL_BUDGET))]
pub fn count_jets(h: &Hypersurface, m: usize, prime: u64, center: Option<&str>, budget: u64) -> PyResult<u128> {
    let sys = jet_equations(&h.inner.polynomial().map_err(py_err)?, m).map_err(py_err)?;
    let query = match center {
        Some(c) => ContactQuery::at(self::center(c)?),
        None => ContactQuery::none(),
    };
    count_jet_points(&sys, prime, &query, budget).map_err(py_err)
}

/// Lifts a jet with Jacobian order `e` to a solution modulo `t^{target+1}`.
#[pyfunction]
pub fn newton_lift(h: &Hypersurface, arc: &TruncatedArc, e: usize, target: usize) -> PyResult<TruncatedArc> {
    let f = h.inner.polynomial().map_err(py_err)?;
    Ok(TruncatedArc { inner: lift_core(&f, &arc.inner, e, target).map_err(py_err)? })
}

/// Adjunction report for an `adjunction_case` body, as JSON.
#[pyfunction]
pub fn check_inversion_of_adjunction(case_json: &str) -> PyResult<String> {
    let case: AdjunctionCase = serde_json::from_str(case_json).map_err(json_err)?;
    let report = theorem_lab::check_inversion_of_adjunction(&case).map_err(py_err)?;
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

/// Semicontinuity report for a `semicontinuity_case` body, as JSON.
#[pyfunction]
pub fn check_semicontinuity(case_json: &str) -> PyResult<String> {
    let case: SemicontinuityCase = serde_json::from_str(case_json).map_err(json_err)?;
    let report = theorem_lab::check_semicontinuity(&case).map_err(py_err)?;
    Ok(serde_json::to_string(&report).expect("report serializes"))
}

/// Runs the command line in-process: `(exit_code, stdout, stderr)`.
#[pyfunction]
pub fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arcmld".to_string()).chain(args);
    let code = arcmld::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

#[pymodule]
fn arcmld_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ArcmldError", py.get_type::<ArcmldError>())?;
    m.add("BudgetExceeded", py.get_type::<BudgetExceeded>())?;
    m.add("InvariantViolation", py.get_type::<InvariantViolation>())?;
    m.add_class::<ResolutionData>()?;
    m.add_class::<MonomialPair>()?;
    m.add_class::<Hypersurface>()?;
    m.add_class::<TruncatedArc>()?;
    m.add_function(wrap_pyfunction!(contact_codim, m)?)?;
    m.add_function(wrap_pyfunction!(mld, m)?)?;
    m.add_function(wrap_pyfunction!(log_discrepancies, m)?)?;
    m.add_function(wrap_pyfunction!(mld_on_w, m)?)?;
    m.add_function(wrap_pyfunction!(mld_bound_check, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(count_jets, m)?)?;
    m.add_function(wrap_pyfunction!(newton_lift, m)?)?;
    m.add_function(wrap_pyfunction!(check_inversion_of_adjunction, m)?)?;
    m.add_function(wrap_pyfunction!(check_semicontinuity, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
