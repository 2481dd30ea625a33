//! Python bindings: constructions, specialization, certification and the
//! permutation-character calculator. Structured results are returned as JSON
//! strings in the same format as the command-line tool.

use std::sync::Arc;

use hypell::arith::{parse_unipoly, Rational, UniPoly};
use hypell::constructions::{construct_with_d, d_for_genus, parse_delta, AlphaSource, ConstructionOptions, CurveKind, GenericConstruction};
use hypell::etale::EtaleAlgebra;
use hypell::galois_modules::{run_check, FiniteGroup, ModuleCheck, ModulePattern, SubgroupSpec};
use hypell::specialize::{sample_specializations, specialize_at, SamplingParams, SpecializedCurve};
use hypell::sqrt_decomp::decompose;
use hypell::verify::{certify, independence_sieve, SieveOptions};
use hypell::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::CapacityExceeded { .. } | Error::GroupTooLarge { .. } | Error::SamplingExhausted { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json<T: serde::Serialize>(t: &T) -> PyResult<String> {
    serde_json::to_string(t).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn strings(p: &UniPoly<Rational>) -> Vec<String> {
    p.coeffs().iter().map(Rational::to_string).collect()
}

fn rationals(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| s.parse::<Rational>().map_err(to_py)).collect()
}

/// Square-root decomposition `m = h^2 - ℓ`; coefficients constant term first.
#[pyfunction]
fn sqrt_decompose(m: Vec<String>) -> PyResult<(Vec<String>, Vec<String>)> {
    let m = UniPoly::new(rationals(&m)?);
    let dec = decompose(&m).map_err(to_py)?;
    Ok((strings(&dec.h), strings(&dec.ell)))
}

/// Coefficients of a polynomial given as text, constant term first.
#[pyfunction]
fn parse_polynomial(s: &str) -> PyResult<Vec<String>> {
    Ok(strings(&parse_unipoly(s).map_err(to_py)?))
}

#[pyclass(name = "Construction", frozen)]
struct PyConstruction {
    inner: GenericConstruction,
}

#[pymethods]
impl PyConstruction {
    #[new]
    #[pyo3(signature = (omega, genus = 1, kind = "X1", delta = None, symbolic = false))]
    fn new(omega: &str, genus: usize, kind: &str, delta: Option<&str>, symbolic: bool) -> PyResult<Self> {
        let alg = EtaleAlgebra::parse(omega).map_err(to_py)?;
        let kind: CurveKind = kind.parse().map_err(to_py)?;
        let delta = delta.map(|d| parse_delta(d, &alg)).transpose().map_err(to_py)?;
        let source = if kind == CurveKind::X1 && delta.is_none() { AlphaSource::Linear } else { AlphaSource::Quadratic };
        let opts = if symbolic { ConstructionOptions::default() } else { ConstructionOptions::numeric_only() };
        let inner = construct_with_d(kind, source, &alg, delta.as_deref(), d_for_genus(kind, genus), opts).map_err(to_py)?;
        Ok(PyConstruction { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus
    }

    #[getter]
    fn kind(&self) -> String {
        self.inner.kind.to_string()
    }

    fn record_json(&self) -> PyResult<String> {
        json(&self.inner.record())
    }

    /// Specialize at explicit parameters (integers or `"p/q"` strings).
    fn specialize(&self, t: Vec<String>) -> PyResult<PyCurve> {
        let inner = specialize_at(&self.inner, &rationals(&t)?).map_err(to_py)?;
        Ok(PyCurve { inner })
    }

    #[pyo3(signature = (count, height_bound = 10, seed = 1))]
    fn sample(&self, py: Python<'_>, count: usize, height_bound: i64, seed: u64) -> PyResult<Vec<PyCurve>> {
        let cs = py.detach(|| sample_specializations(&self.inner, SamplingParams::new(count, height_bound, seed))).map_err(to_py)?;
        Ok(cs.into_iter().map(|inner| PyCurve { inner }).collect())
    }
}

#[pyclass(name = "Curve", frozen)]
struct PyCurve {
    inner: SpecializedCurve,
}

#[pymethods]
impl PyCurve {
    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    #[getter]
    fn t(&self) -> Vec<String> {
        self.inner.t.iter().map(Rational::to_string).collect()
    }

    /// `ℓ_t`, constant term first.
    #[getter]
    fn ell(&self) -> Vec<String> {
        strings(&self.inner.dec.ell)
    }

    #[getter]
    fn defining_polynomial(&self) -> Vec<String> {
        strings(&self.inner.defining_polynomial())
    }

    /// The marked point satisfies the curve equation.
    fn point_satisfies(&self) -> PyResult<bool> {
        self.inner.point_satisfies().map_err(to_py)
    }

    fn record_json(&self) -> PyResult<String> {
        json(&self.inner.record())
    }

    #[pyo3(signature = (prime_budget = 200, sieve = false, coeff_bound = 5))]
    fn certify(&self, py: Python<'_>, prime_budget: usize, sieve: bool, coeff_bound: u64) -> PyResult<String> {
        let opts = SieveOptions { coeff_bound, prime_budget, ..SieveOptions::default() };
        let cert = py.detach(|| certify(&self.inner, prime_budget, sieve.then_some(&opts))).map_err(to_py)?;
        json(&cert)
    }

    #[pyo3(signature = (coeff_bound = 5, prime_budget = 200))]
    fn sieve(&self, py: Python<'_>, coeff_bound: u64, prime_budget: usize) -> PyResult<String> {
        let opts = SieveOptions { coeff_bound, prime_budget, ..SieveOptions::default() };
        let r = py.detach(|| independence_sieve(&self.inner, &opts)).map_err(to_py)?;
        json(&r)
    }
}

#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: Arc<FiniteGroup>,
}

#[pymethods]
impl PyGroup {
    /// `S_n`, `A_n`, `C_n`, `D_n`, `W_k`, or generators like `(1,2,3);(1,2)`.
    #[new]
    fn new(desc: &str) -> PyResult<Self> {
        Ok(PyGroup { inner: Arc::new(FiniteGroup::parse(desc).map_err(to_py)?) })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn class_representatives(&self) -> Vec<String> {
        (0..self.inner.num_classes()).map(|c| self.inner.class_rep(c).to_cycles()).collect()
    }

    /// Values of the character of `Q[G/H]` on the classes, where `H` is
    /// given by generators.
    fn perm_character(&self, generators: Vec<String>) -> PyResult<Vec<String>> {
        let h = SubgroupSpec::Generators(generators).resolve(&self.inner).map_err(to_py)?;
        let chi = hypell::galois_modules::perm_character(&self.inner, &h).map_err(to_py)?;
        Ok(chi.values().iter().map(Rational::to_string).collect())
    }

    /// Run a module check with a JSON pattern; returns the outcome as JSON.
    #[pyo3(signature = (check, pattern = "{}"))]
    fn check(&self, check: &str, pattern: &str) -> PyResult<String> {
        let check: ModuleCheck = check.parse().map_err(to_py)?;
        let pattern: ModulePattern = serde_json::from_str(pattern).map_err(|e| PyValueError::new_err(format!("pattern: {e}")))?;
        json(&run_check(&self.inner, check, &pattern).map_err(to_py)?)
    }
}

#[pymodule]
fn pyhypell(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyConstruction>()?;
    m.add_class::<PyCurve>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(sqrt_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(parse_polynomial, m)?)?;
    Ok(())
}
