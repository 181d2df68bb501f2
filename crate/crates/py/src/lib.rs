//! Python bindings for `residue-core`. Report structures cross the boundary as
//! plain dicts and lists; exact rationals become `fractions.Fraction`.

use std::fs::File;
use std::io::BufReader;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use residue_core::artin_euler::{self, TruncationHeight};
use residue_core::family_stats;
use residue_core::field_catalog::{self, GroupTag, NumberFieldRecord};
use residue_core::prime_poly::{self, CycleType, IntPolynomial};
use residue_core::quadratic_oracle;
use residue_core::random_model::{self, ChebotarevDistribution, Deformation};

fn value_err(e: residue_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

fn fraction(py: Python<'_>, q: &num_rational::BigRational) -> PyResult<Py<PyAny>> {
    Ok(py
        .import("fractions")?
        .getattr("Fraction")?
        .call1((q.to_string(),))?
        .unbind())
}

fn height(x: Option<f64>) -> TruncationHeight {
    x.map_or(TruncationHeight::Auto, TruncationHeight::Fixed)
}

/// A monic integer polynomial together with its field data.
#[pyclass(name = "NumberField", module = "residue", frozen, from_py_object)]
#[derive(Clone)]
struct PyNumberField {
    inner: NumberFieldRecord,
}

#[pymethods]
impl PyNumberField {
    /// Coefficients low to high, including the leading 1.
    #[new]
    fn new(coeffs: Vec<i64>) -> PyResult<Self> {
        let poly = IntPolynomial::new(coeffs).map_err(value_err)?;
        Ok(Self {
            inner: NumberFieldRecord::from_polynomial(poly).map_err(value_err)?,
        })
    }

    #[getter]
    fn coefficients(&self) -> Vec<i64> {
        self.inner.poly.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn disc(&self) -> i128 {
        self.inner.disc
    }

    #[getter]
    fn signature(&self) -> (usize, usize) {
        self.inner.signature
    }

    #[getter]
    fn group(&self) -> String {
        self.inner.group_label.clone()
    }

    #[getter]
    fn is_sn(&self) -> bool {
        self.inner.group_tag != GroupTag::Unknown
    }

    /// `(degrees, ramified)` of the factorization mod `p`.
    fn frobenius(&self, p: u64) -> PyResult<(Vec<u32>, bool)> {
        let obs = field_catalog::frobenius_class(&self.inner, p).map_err(value_err)?;
        Ok((obs.class.degrees().to_vec(), obs.class.is_ramified()))
    }

    /// Truncated `L(1, rho)`; `x=None` uses the default height.
    #[pyo3(signature = (x=None, method="product"))]
    fn estimate(&self, py: Python<'_>, x: Option<f64>, method: &str) -> PyResult<Py<PyAny>> {
        let x = height(x).resolve(self.inner.abs_disc());
        let est = match method {
            "product" => artin_euler::truncated_product_l1(&self.inner, x),
            "log-sum" => artin_euler::log_sum_l1(&self.inner, x),
            other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        }
        .map_err(value_err)?;
        to_py(py, &est)
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("NumberField({}, disc={})", self.inner.poly, self.inner.disc)
    }
}

fn records(fields: &[PyNumberField]) -> Vec<NumberFieldRecord> {
    fields.iter().map(|f| f.inner.clone()).collect()
}

#[pyfunction]
fn factor_degrees(py: Python<'_>, coeffs: Vec<i64>, p: u64) -> PyResult<Py<PyAny>> {
    let poly = IntPolynomial::new(coeffs).map_err(value_err)?;
    to_py(
        py,
        &prime_poly::factor_degrees_mod_p(&poly, p).map_err(value_err)?,
    )
}

/// Exact local factor of `L(s, rho)` at `s = 1` for a cycle type.
#[pyfunction]
fn local_factor(py: Python<'_>, parts: Vec<u32>, p: u64) -> PyResult<Py<PyAny>> {
    let c = CycleType::new(parts).map_err(value_err)?;
    fraction(
        py,
        &artin_euler::l_rho_local_factor(&c, p)
            .map_err(value_err)?
            .value,
    )
}

/// `(lower, upper)` bounds on every local factor of dimension `d`.
#[pyfunction]
fn factor_bounds(py: Python<'_>, p: u64, d: u32) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
    let (lo, hi) = artin_euler::factor_bounds(p, d).map_err(value_err)?;
    Ok((fraction(py, &lo)?, fraction(py, &hi)?))
}

#[pyfunction]
fn envelope_products(d: u32, x: f64) -> (f64, f64) {
    artin_euler::envelope_products(d, x)
}

#[pyfunction]
fn class_number(d: i64) -> PyResult<u64> {
    Ok(quadratic_oracle::class_number_imaginary(d)
        .map_err(value_err)?
        .h)
}

#[pyfunction]
fn kronecker(d: i64, n: u64) -> PyResult<i8> {
    quadratic_oracle::kronecker_chi(d, n).map_err(value_err)
}

#[pyfunction]
fn compare_truncation(py: Python<'_>, d: i64, x: f64) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &quadratic_oracle::compare_truncation(d, x).map_err(value_err)?,
    )
}

#[pyfunction]
fn enumerate_cubics(height: i64) -> PyResult<Vec<PyNumberField>> {
    let cat = field_catalog::enumerate_cubics(height).map_err(value_err)?;
    Ok(cat
        .into_iter()
        .map(|inner| PyNumberField { inner })
        .collect())
}

/// Loads a catalog CSV; returns `(fields, diagnostics)`.
#[pyfunction]
fn load_catalog(py: Python<'_>, path: &str) -> PyResult<(Vec<PyNumberField>, Py<PyAny>)> {
    let file = File::open(path).map_err(|e| PyIOError::new_err(format!("{path}: {e}")))?;
    let loaded = field_catalog::load_catalog(BufReader::new(file)).map_err(value_err)?;
    let fields = loaded
        .records
        .into_iter()
        .map(|inner| PyNumberField { inner })
        .collect();
    Ok((fields, to_py(py, &loaded.diagnostics)?))
}

#[pyfunction]
fn write_catalog(fields: Vec<PyNumberField>, path: &str) -> PyResult<()> {
    let file = File::create(path).map_err(|e| PyIOError::new_err(format!("{path}: {e}")))?;
    field_catalog::write_catalog(&records(&fields), file).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (fields, x=None))]
fn scan(py: Python<'_>, fields: Vec<PyNumberField>, x: Option<f64>) -> PyResult<Py<PyAny>> {
    let rep = py
        .detach(|| family_stats::scan_residues(&records(&fields), height(x)))
        .map_err(value_err)?;
    to_py(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (fields, p, sigma=family_stats::DEFAULT_SIGMA_THRESHOLD))]
fn chebotarev(
    py: Python<'_>,
    fields: Vec<PyNumberField>,
    p: u64,
    sigma: f64,
) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &family_stats::chebotarev_densities(&records(&fields), p, sigma).map_err(value_err)?,
    )
}

/// Random-model moments of the small-prime sum, one report per `r`.
#[pyfunction]
#[pyo3(signature = (n, y, x, rs, samples=10_000, seed=0, f="0"))]
#[allow(clippy::too_many_arguments)]
fn model_moments(
    py: Python<'_>,
    n: u32,
    y: f64,
    x: f64,
    rs: Vec<u32>,
    samples: usize,
    seed: u64,
    f: &str,
) -> PyResult<Py<PyAny>> {
    let deform: Deformation = f.parse().map_err(PyValueError::new_err)?;
    let dist = ChebotarevDistribution::new(n, deform).map_err(value_err)?;
    let reps = py
        .detach(|| {
            family_stats::empirical_moments(
                family_stats::MomentSource::Model {
                    dist: &dist,
                    samples,
                    seed,
                },
                y,
                x,
                &rs,
            )
        })
        .map_err(value_err)?;
    to_py(py, &reps)
}

#[pyfunction]
#[pyo3(signature = (n, x, seed=0, f="0"))]
fn model_l1(py: Python<'_>, n: u32, x: f64, seed: u64, f: &str) -> PyResult<Py<PyAny>> {
    let deform: Deformation = f.parse().map_err(PyValueError::new_err)?;
    let dist = ChebotarevDistribution::new(n, deform).map_err(value_err)?;
    to_py(
        py,
        &random_model::model_l1(&dist, x, seed).map_err(value_err)?,
    )
}

#[pyfunction]
fn moment_bound(d: u32, r: u32, y: f64) -> PyResult<f64> {
    family_stats::moment_bound_rhs(d, r, y).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (max2r=16, y=1000.0))]
fn composition_sweep(py: Python<'_>, max2r: u32, y: f64) -> PyResult<Py<PyAny>> {
    to_py(
        py,
        &family_stats::composition_sweep(max2r, y).map_err(value_err)?,
    )
}

#[pyfunction]
fn exceptional_set_size(x: f64, c_prime: f64) -> PyResult<f64> {
    family_stats::exceptional_set_size(x, c_prime).map_err(value_err)
}

#[pyfunction]
fn mertens_product(y: f64) -> PyResult<f64> {
    artin_euler::mertens_product(y).map_err(value_err)
}

#[pyfunction]
fn constants(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, artin_euler::constants())
}

#[pymodule]
fn residue(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNumberField>()?;
    m.add_function(wrap_pyfunction!(factor_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(local_factor, m)?)?;
    m.add_function(wrap_pyfunction!(factor_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(envelope_products, m)?)?;
    m.add_function(wrap_pyfunction!(class_number, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(compare_truncation, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_cubics, m)?)?;
    m.add_function(wrap_pyfunction!(load_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(write_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(chebotarev, m)?)?;
    m.add_function(wrap_pyfunction!(model_moments, m)?)?;
    m.add_function(wrap_pyfunction!(model_l1, m)?)?;
    m.add_function(wrap_pyfunction!(moment_bound, m)?)?;
    m.add_function(wrap_pyfunction!(composition_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_set_size, m)?)?;
    m.add_function(wrap_pyfunction!(mertens_product, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    Ok(())
}
