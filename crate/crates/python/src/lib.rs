//! Python bindings: projection fields, the deformation family, Toeplitz indices
//! and the verification harness.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use weylkit_core::deform::{self, DeformationFamily};
use weylkit_core::harness::{self, toeplitz, SuiteConfig};
use weylkit_core::projectors;
use weylkit_core::quantize::HermiteBasisSpec;
use weylkit_core::{CMatrix, Error, C64};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows(m: &CMatrix) -> Vec<Vec<C64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// A matrix-valued function on the plane or the sphere.
#[pyclass(name = "ProjectionField", frozen)]
struct PyField {
    inner: projectors::ProjectionField,
}

#[pymethods]
impl PyField {
    /// Bott projector on `R^{2n}`.
    #[staticmethod]
    fn bott(n: usize) -> PyResult<Self> {
        Ok(Self { inner: projectors::bott_projector(n).map_err(py_err)? })
    }

    /// `(1 + c(z, t)) / 2` on the unit sphere in `R^{2n+1}`.
    #[staticmethod]
    fn sphere(n: usize) -> PyResult<Self> {
        Ok(Self { inner: projectors::sphere_projector(n).map_err(py_err)? })
    }

    /// The `λ → 0` endpoint of the deformation family.
    #[staticmethod]
    #[pyo3(signature = (n, tau = 1.0))]
    fn e0(n: usize, tau: f64) -> PyResult<Self> {
        Ok(Self { inner: deform::pointwise_family_e0(tau, n).map_err(py_err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn point_dim(&self) -> usize {
        self.inner.point_dim()
    }

    #[getter]
    fn matrix_dim(&self) -> usize {
        self.inner.matrix_dim()
    }

    fn evaluate(&self, point: Vec<f64>) -> PyResult<Vec<Vec<C64>>> {
        Ok(rows(&self.inner.evaluate(&point).map_err(py_err)?))
    }

    /// `(‖e² − e‖, ‖e − e*‖)` at a point.
    fn check_point(&self, point: Vec<f64>) -> PyResult<(f64, f64)> {
        let c = self.inner.check_point(&point).map_err(py_err)?;
        Ok((c.idempotent, c.self_adjoint))
    }

    #[pyo3(signature = (grid = 512))]
    fn chern_integral(&self, py: Python<'_>, grid: usize) -> PyResult<f64> {
        py.detach(|| projectors::chern_integral(&self.inner, grid)).map_err(py_err)
    }

    #[pyo3(signature = (grid = 512))]
    fn chern_number(&self, py: Python<'_>, grid: usize) -> PyResult<i64> {
        py.detach(|| projectors::chern_number(&self.inner, grid)).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("ProjectionField({:?}, n={})", self.inner.name, self.inner.n)
    }
}

/// The idempotent family `e_λ(τ)` on a truncated Hermite basis.
#[pyclass(name = "DeformationFamily", frozen)]
struct PyFamily {
    inner: DeformationFamily,
}

#[pymethods]
impl PyFamily {
    #[new]
    #[pyo3(signature = (n, lam, tau, n_max = 24))]
    fn new(n: usize, lam: f64, tau: f64, n_max: usize) -> PyResult<Self> {
        let spec = HermiteBasisSpec::new(n, lam, n_max).map_err(py_err)?;
        Ok(Self { inner: DeformationFamily::new(tau, spec).map_err(py_err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.inner.tau
    }

    fn e(&self) -> Vec<Vec<C64>> {
        rows(&self.inner.e_operator().matrix)
    }

    fn r(&self) -> Vec<Vec<C64>> {
        rows(&self.inner.r_operator().matrix)
    }

    fn b(&self) -> Vec<Vec<C64>> {
        rows(&self.inner.b_operator().matrix)
    }

    fn tau_limit(&self) -> Vec<Vec<C64>> {
        rows(&self.inner.tau_limit().matrix)
    }

    /// Residuals of the defining relations, keyed by name.
    fn relations(&self) -> PyResult<BTreeMap<&'static str, f64>> {
        let r = self.inner.relations().map_err(py_err)?;
        Ok(BTreeMap::from([
            ("idempotent", r.idempotent),
            ("a_intertwines_r", r.a_intertwines_r),
            ("b_intertwines_r", r.b_intertwines_r),
            ("ab_identity", r.ab_identity),
            ("r_mehler", r.r_mehler),
            ("self_adjoint", r.self_adjoint),
        ]))
    }
}

/// Distances to the `τ → ∞` limit and their fitted log-slope.
#[pyfunction]
#[pyo3(signature = (taus, n = 1, lam = 1.0, n_max = 24))]
fn tau_convergence(taus: Vec<f64>, n: usize, lam: f64, n_max: usize) -> PyResult<(Vec<f64>, f64)> {
    let spec = HermiteBasisSpec::new(n, lam, n_max).map_err(py_err)?;
    let t = deform::tau_convergence(spec, &taus).map_err(py_err)?;
    Ok((t.distances, t.slope))
}

/// Index of the truncated Toeplitz operator with Fourier coefficients `symbol`.
#[pyfunction]
#[pyo3(signature = (symbol, n = 256))]
fn toeplitz_index(symbol: BTreeMap<i64, C64>, n: usize) -> PyResult<i64> {
    toeplitz::toeplitz_index(&symbol, n).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (symbol, n = 256))]
fn winding(symbol: BTreeMap<i64, C64>, n: usize) -> PyResult<i64> {
    toeplitz::winding(&symbol, n).map_err(py_err)
}

/// Runs the suites described by a JSON config and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (config = None, jobs = 1))]
fn verify(py: Python<'_>, config: Option<&str>, jobs: usize) -> PyResult<String> {
    let mut cfg = match config {
        Some(s) => SuiteConfig::from_json_str(s).map_err(py_err)?,
        None => SuiteConfig::default(),
    };
    cfg.jobs = jobs.max(1);
    py.detach(|| harness::run_suite(&cfg).and_then(|r| r.to_json_string()))
        .map_err(py_err)
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    harness::check_ids(&SuiteConfig::default())
}

#[pyfunction]
fn in_scope_anchors() -> Vec<&'static str> {
    harness::IN_SCOPE_ANCHORS.to_vec()
}

#[pymodule]
fn weylkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(tau_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(toeplitz_index, m)?)?;
    m.add_function(wrap_pyfunction!(winding, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(in_scope_anchors, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
