//! Python bindings: `import jordan`.

use jordan_core::catalog::{catalog as core_catalog, CatalogCase};
use jordan_core::classify::classify_dim;
use jordan_core::cohomology::Cohomology;
use jordan_core::extension::{central_extension, CocycleVector};
use jordan_core::format::{parse_algebra_file, render_algebra_file};
use jordan_core::groebner::{buchberger, parse_system, GbLimits};
use jordan_core::isotest::{decide_with_limits, DecideMode};
use jordan_core::{FieldSpec, JordanError};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn err(e: JordanError) -> PyErr {
    match e {
        JordanError::ResourceExceeded(_) | JordanError::InstanceTooLarge(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite-dimensional commutative algebra given by structure constants.
#[pyclass(name = "Algebra", module = "jordan", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyAlgebra(jordan_core::Algebra);

#[pymethods]
impl PyAlgebra {
    /// `Algebra("F:3", 3, "a^2 = b; a*b = c")`.
    #[new]
    fn new(field: &str, dim: usize, table: &str) -> PyResult<Self> {
        let f = FieldSpec::parse(field).map_err(err)?;
        jordan_core::Algebra::from_table(f, dim, table).map(PyAlgebra).map_err(err)
    }

    /// Parse the text of an algebra file.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_algebra_file(text).map(PyAlgebra).map_err(err)
    }

    /// Algebra file text.
    fn to_text(&self) -> String {
        render_algebra_file(&self.0, &[])
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    fn table(&self) -> String {
        self.0.table()
    }

    fn is_jordan(&self) -> bool {
        self.0.check_jordan()
    }

    fn is_nilpotent(&self) -> bool {
        self.0.is_nilpotent()
    }

    fn nilindex(&self) -> Option<usize> {
        self.0.nilindex()
    }

    fn has_central_component(&self) -> bool {
        self.0.has_central_component()
    }

    fn fingerprint<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json(py, &self.0.fingerprint())
    }

    /// Dimensions of Z^2, B^2 and H^2.
    fn cohomology(&self) -> (usize, usize, usize) {
        let c = Cohomology::new(&self.0);
        (c.cocycles().dim(), c.coboundaries().dim(), c.h2_dim())
    }

    /// Central extension by `;`-separated forms such as "S(1,1)+S(2,2)".
    fn extend(&self, theta: &str) -> PyResult<Self> {
        let theta = CocycleVector::parse(self.0.field(), self.0.dim(), theta).map_err(err)?;
        central_extension(&self.0, &theta).map(PyAlgebra).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, {}, {:?})", self.0.field().to_string(), self.0.dim(), self.0.table())
    }
}

/// Isomorphism verdict as a dict; `mode` is "base" or "closure".
#[pyfunction]
#[pyo3(signature = (a, b, mode = "base"))]
fn decide<'py>(py: Python<'py>, a: &PyAlgebra, b: &PyAlgebra, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let mode = match mode {
        "base" => DecideMode::BaseFieldFirst,
        "closure" => DecideMode::ClosureOnly,
        _ => return Err(PyValueError::new_err(format!("unknown mode `{mode}`"))),
    };
    let limits = GbLimits::from_env().map_err(err)?;
    let v = py.detach(|| decide_with_limits(&a.0, &b.0, mode, &limits));
    json(py, &v)
}

/// Representatives of dimension `dim` over `F:p`.
#[pyfunction]
fn classify(py: Python<'_>, dim: usize, field: &str) -> PyResult<Vec<PyAlgebra>> {
    let f = FieldSpec::parse(field).map_err(err)?;
    let r = py.detach(|| classify_dim(dim, f)).map_err(err)?;
    Ok(r.representatives.into_iter().map(|x| PyAlgebra(x.algebra)).collect())
}

/// `(id, Algebra)` pairs of a catalog case: any, closed, char2 or real.
#[pyfunction]
fn catalog(case: &str, dim: usize) -> PyResult<Vec<(String, PyAlgebra)>> {
    let case = CatalogCase::parse(case).map_err(err)?;
    Ok(core_catalog(case, dim).into_iter().map(|e| (e.id, PyAlgebra(e.algebra))).collect())
}

/// Reduced Groebner basis of a generator file, as strings.
#[pyfunction]
fn groebner(text: &str) -> PyResult<Vec<String>> {
    let (_, gens) = parse_system(text).map_err(err)?;
    let limits = GbLimits::from_env().map_err(err)?;
    let basis = buchberger(&gens, &limits).map_err(err)?;
    Ok(basis.iter().map(|p| p.to_string()).collect())
}

#[pymodule]
fn jordan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(groebner, m)?)?;
    Ok(())
}
