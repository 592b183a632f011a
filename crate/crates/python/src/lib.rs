//! Python module `plab`: exact scalars and operators, the representation
//! catalog, the verification suites and the spectral laboratory.
//!
//! Reports come back as plain dicts with the same layout as the CLI's JSON.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use plab_core::catalog::{build_rep, RepKind, Representation};
use plab_core::cli::commands::{run_evolve, EvolveParams};
use plab_core::lab::Theory;
use plab_core::operator::DiffOperator;
use plab_core::scalar::{parse_scalar, OnShellScalar};
use plab_core::spin::Spin;
use plab_core::verify;

fn err(e: plab_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serializes through JSON so dict layouts match the CLI output exactly.
fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn spin(text: &str) -> PyResult<Spin> {
    Spin::parse(text).map_err(err)
}

#[pyclass(name = "Scalar", module = "plab", frozen)]
#[derive(Clone)]
struct PyScalar(OnShellScalar);

#[pymethods]
impl PyScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_scalar(text).map(PyScalar).map_err(err)
    }

    fn __add__(&self, o: &PyScalar) -> PyScalar {
        PyScalar(self.0.add(&o.0))
    }

    fn __sub__(&self, o: &PyScalar) -> PyScalar {
        PyScalar(self.0.sub(&o.0))
    }

    fn __mul__(&self, o: &PyScalar) -> PyScalar {
        PyScalar(self.0.mul(&o.0))
    }

    fn __truediv__(&self, o: &PyScalar) -> PyResult<PyScalar> {
        self.0.div(&o.0).map(PyScalar).map_err(err)
    }

    fn __neg__(&self) -> PyScalar {
        PyScalar(self.0.neg())
    }

    fn __eq__(&self, o: &PyScalar) -> bool {
        self.0 == o.0
    }

    /// `∂/∂p_j`, `j` in 1..=3.
    fn derive(&self, j: usize) -> PyResult<PyScalar> {
        if !(1..=3).contains(&j) {
            return Err(PyValueError::new_err("axis must be 1, 2 or 3"));
        }
        Ok(PyScalar(self.0.derive(j)))
    }

    fn conj(&self) -> PyScalar {
        PyScalar(self.0.conj())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Value at `(p1, p2, p3, mu)` on the upper shell.
    fn eval(&self, p1: f64, p2: f64, p3: f64, mu: f64) -> PyResult<num_complex::Complex64> {
        self.0.eval_f64(&[p1, p2, p3, mu]).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0.render())
    }
}

#[pyclass(name = "Operator", module = "plab", frozen)]
#[derive(Clone)]
struct PyOperator(DiffOperator);

#[pymethods]
impl PyOperator {
    #[staticmethod]
    fn identity(dim: usize) -> PyOperator {
        PyOperator(DiffOperator::identity(dim))
    }

    #[staticmethod]
    fn scalar(dim: usize, s: &PyScalar) -> PyOperator {
        PyOperator(DiffOperator::scalar(dim, s.0.clone()))
    }

    /// `∂/∂p_j` on `C^dim`.
    #[staticmethod]
    fn partial(dim: usize, j: usize) -> PyResult<PyOperator> {
        if !(1..=3).contains(&j) {
            return Err(PyValueError::new_err("axis must be 1, 2 or 3"));
        }
        Ok(PyOperator(DiffOperator::partial(dim, j)))
    }

    /// Complex conjugation `K`.
    #[staticmethod]
    fn conjugation(dim: usize) -> PyOperator {
        PyOperator(DiffOperator::conjugation(dim))
    }

    /// Momentum reversal `Υ`.
    #[staticmethod]
    fn parity(dim: usize) -> PyOperator {
        PyOperator(DiffOperator::parity_op(dim))
    }

    fn __add__(&self, o: &PyOperator) -> PyResult<PyOperator> {
        self.0.add(&o.0).map(PyOperator).map_err(err)
    }

    fn __sub__(&self, o: &PyOperator) -> PyResult<PyOperator> {
        self.0.sub(&o.0).map(PyOperator).map_err(err)
    }

    fn __matmul__(&self, o: &PyOperator) -> PyResult<PyOperator> {
        self.0.compose(&o.0).map(PyOperator).map_err(err)
    }

    fn __eq__(&self, o: &PyOperator) -> PyResult<bool> {
        self.0.equals(&o.0).map_err(err)
    }

    fn commutator(&self, o: &PyOperator) -> PyResult<PyOperator> {
        self.0.commutator(&o.0).map(PyOperator).map_err(err)
    }

    fn adjoint(&self) -> PyResult<PyOperator> {
        self.0.formal_adjoint().map(PyOperator).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    #[getter]
    fn antilinear(&self) -> bool {
        self.0.is_antilinear()
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!("Operator({})", self.0.render())
    }
}

#[pyclass(name = "Representation", module = "plab", frozen)]
struct PyRepresentation(Representation);

#[pymethods]
impl PyRepresentation {
    #[new]
    #[pyo3(signature = (kind, spin = "0"))]
    fn new(kind: &str, spin: &str) -> PyResult<Self> {
        let k = RepKind::parse(kind).map_err(err)?;
        build_rep(k, self::spin(spin)?).map(PyRepresentation).map_err(err)
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn t(&self) -> PyOperator {
        PyOperator(self.0.t.clone())
    }

    #[getter]
    fn s(&self) -> PyOperator {
        PyOperator(self.0.s.clone())
    }

    /// The ten generators keyed `P0, P1..P3, J1..J3, K1..K3`.
    fn generators<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (name, op) in self.0.generators.named() {
            d.set_item(name, PyOperator(op.clone()))?;
        }
        Ok(d)
    }

    fn expected<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.expected)
    }

    fn __repr__(&self) -> String {
        format!("Representation('{}')", self.0.label())
    }
}

/// Labels accepted by `Representation`.
#[pyfunction]
fn catalog_kinds() -> Vec<&'static str> {
    RepKind::all().into_iter().map(RepKind::label).collect()
}

#[pyfunction]
fn check_lie_algebra<'py>(py: Python<'py>, rep: &PyRepresentation) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &verify::check_lie_algebra(&rep.0).map_err(err)?)
}

/// `(values, report)`
#[pyfunction]
fn check_casimirs<'py>(py: Python<'py>, rep: &PyRepresentation) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let (values, report) = verify::check_casimirs(&rep.0).map_err(err)?;
    Ok((to_py(py, &values)?, to_py(py, &report)?))
}

#[pyfunction]
fn check_discrete<'py>(py: Python<'py>, rep: &PyRepresentation) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &verify::check_discrete(&rep.0).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (spin = "1/2"))]
fn jm_scan<'py>(py: Python<'py>, spin: &str) -> PyResult<Bound<'py, PyAny>> {
    let s = self::spin(spin)?;
    let table = py.detach(|| verify::jm_scan(s)).map_err(err)?;
    to_py(py, &table)
}

#[pyfunction]
#[pyo3(signature = (rep, use_t = true, use_s = true))]
fn commutant_dimension<'py>(py: Python<'py>, rep: &PyRepresentation, use_t: bool, use_s: bool) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &verify::commutant_dimension_with(&rep.0, use_t, use_s).map_err(err)?)
}

#[pyfunction]
fn d_space<'py>(py: Python<'py>, rep: &PyRepresentation) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &verify::d_space(&rep.0).map_err(err)?)
}

/// Sorted eigenvalues of the 4×4 Dirac Hamiltonian.
#[pyfunction]
fn dirac_spectrum(p: [f64; 3], m: f64) -> [f64; 4] {
    plab_core::lab::dirac_spectrum(p, m)
}

/// Spectral evolution of a Gaussian packet; returns the same summary as `plab evolve --format json`.
#[pyfunction]
#[pyo3(signature = (theory = "T1", n = 64, dims = 1, half_width = 20.0, mass = 1.0, dt = 1e-3, steps = 1000, record_every = 10, width = 1.5, center = [0.0; 3], k0 = [0.5, 0.0, 0.0]))]
#[allow(clippy::too_many_arguments)]
fn evolve<'py>(
    py: Python<'py>,
    theory: &str,
    n: usize,
    dims: usize,
    half_width: f64,
    mass: f64,
    dt: f64,
    steps: usize,
    record_every: usize,
    width: f64,
    center: [f64; 3],
    k0: [f64; 3],
) -> PyResult<Bound<'py, PyAny>> {
    let theory: Theory = theory.parse().map_err(err)?;
    let p = EvolveParams { theory, n, dims, half_width, mass, dt, steps, record_every, width, center, k0 };
    let (_, summary, _) = py.detach(|| run_evolve(&p, false)).map_err(err)?;
    to_py(py, &summary)
}

/// Runs the command line with `args` (without the program name) and returns the exit status.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> i32 {
    py.detach(|| plab_core::cli::main_with_args(std::iter::once("plab".to_string()).chain(args)))
}

#[pymodule]
fn plab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_function(wrap_pyfunction!(catalog_kinds, m)?)?;
    m.add_function(wrap_pyfunction!(check_lie_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(check_casimirs, m)?)?;
    m.add_function(wrap_pyfunction!(check_discrete, m)?)?;
    m.add_function(wrap_pyfunction!(jm_scan, m)?)?;
    m.add_function(wrap_pyfunction!(commutant_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(d_space, m)?)?;
    m.add_function(wrap_pyfunction!(dirac_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
