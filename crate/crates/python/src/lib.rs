//! Python bindings for the nilpotency index toolkit.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use nilindex_core::artrans::{ar_quiver, ARQuiver, EnumerationLimits};
use nilindex_core::quiver::{parse_presentation, BoundAlgebra, DEFAULT_PATH_CAP};
use nilindex_core::radical::{nilpotency_index, Method, RadicalFiltration, Strategy};
use nilindex_core::theorems::{run_checks, Check};
use nilindex_core::Error;

create_exception!(nilindex, NilindexError, PyException);
create_exception!(nilindex, InvalidPresentation, NilindexError);
create_exception!(nilindex, LimitsExceeded, NilindexError);
create_exception!(nilindex, MethodInapplicable, NilindexError);
create_exception!(nilindex, Inconsistency, NilindexError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match nilindex_core::cli::exit_code(&e) {
        2 => InvalidPresentation::new_err(msg),
        3 => LimitsExceeded::new_err(msg),
        4 => MethodInapplicable::new_err(msg),
        5 => Inconsistency::new_err(msg),
        _ => NilindexError::new_err(msg),
    }
}

fn json_loads<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

/// A bound quiver algebra kQ/I with a certified admissible ideal.
#[pyclass(frozen, module = "nilindex")]
pub struct Algebra {
    inner: BoundAlgebra,
}

#[pymethods]
impl Algebra {
    /// Parses a presentation in the text format (`vertex`, `arrow`, `relation` lines).
    #[new]
    #[pyo3(signature = (text, path_cap = DEFAULT_PATH_CAP))]
    fn new(text: &str, path_cap: usize) -> PyResult<Self> {
        let pres = parse_presentation(text).map_err(to_py)?;
        Ok(Algebra { inner: BoundAlgebra::with_cap(pres, path_cap).map_err(to_py)? })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| NilindexError::new_err(format!("{path}: {e}")))?;
        Algebra::new(&text, DEFAULT_PATH_CAP)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.quiver().vertex_names().to_vec()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn is_monomial(&self) -> bool {
        self.inner.presentation().is_monomial()
    }

    fn admissibility<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let s = serde_json::to_string(&self.inner.admissibility()).map_err(|e| NilindexError::new_err(e.to_string()))?;
        json_loads(py, &s)
    }

    fn to_text(&self) -> String {
        self.inner.presentation().to_dsl()
    }

    /// Builds the Auslander-Reiten quiver; raises LimitsExceeded for representation-infinite input.
    #[pyo3(signature = (max_modules = 10_000, max_total_dimension = 10_000))]
    fn ar_quiver(&self, py: Python<'_>, max_modules: usize, max_total_dimension: usize) -> PyResult<ARQuiverPy> {
        let limits = EnumerationLimits::new(max_modules, max_total_dimension)
            .ok_or_else(|| PyValueError::new_err("limits must be positive"))?;
        let alg = self.inner.clone();
        let ar = py.detach(move || ar_quiver(&alg, limits)).map_err(to_py)?;
        Ok(ARQuiverPy { inner: Arc::new(ar) })
    }

    fn __repr__(&self) -> String {
        format!("Algebra({} vertices, dimension {})", self.inner.num_vertices(), self.inner.dim())
    }
}

#[pyclass(frozen, name = "ARQuiver", module = "nilindex")]
pub struct ARQuiverPy {
    inner: Arc<ARQuiver>,
}

#[pymethods]
impl ARQuiverPy {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.nodes().iter().map(|n| n.label.clone()).collect()
    }

    #[getter]
    fn dimension_vectors(&self) -> Vec<Vec<usize>> {
        self.inner.nodes().iter().map(|n| n.module.dim_vector().to_vec()).collect()
    }

    /// Irreducible arrows as `(source, target, multiplicity)` node indices.
    #[getter]
    fn arrows(&self) -> Vec<(usize, usize, usize)> {
        self.inner.arrows().to_vec()
    }

    fn tau(&self, node: usize) -> PyResult<Option<usize>> {
        self.check(node)?;
        Ok(self.inner.tau(node))
    }

    fn tau_inverse(&self, node: usize) -> PyResult<Option<usize>> {
        self.check(node)?;
        Ok(self.inner.tau_inverse(node))
    }

    fn mesh_defects(&self) -> Vec<usize> {
        self.inner.mesh_defects()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let s = serde_json::to_string(&self.inner.to_json()).map_err(|e| NilindexError::new_err(e.to_string()))?;
        json_loads(py, &s)
    }

    /// Computes the radical filtration; `strategy` is "almost-split" or "definitional".
    #[pyo3(signature = (strategy = "almost-split"))]
    fn filtration(&self, py: Python<'_>, strategy: &str) -> PyResult<Filtration> {
        let s = match strategy {
            "almost-split" => Strategy::AlmostSplit,
            "definitional" => Strategy::Definitional,
            other => return Err(PyValueError::new_err(format!("unknown strategy {other}"))),
        };
        let ar = self.inner.clone();
        let f = py.detach(move || RadicalFiltration::with_strategy(ar, s)).map_err(to_py)?;
        Ok(Filtration { inner: f })
    }

    fn __repr__(&self) -> String {
        format!("ARQuiver({} indecomposables)", self.inner.len())
    }
}

impl ARQuiverPy {
    fn check(&self, node: usize) -> PyResult<()> {
        if node < self.inner.len() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("node {node} out of range")))
        }
    }
}

/// Powers of the radical of mod A between indecomposables.
#[pyclass(frozen, module = "nilindex")]
pub struct Filtration {
    inner: RadicalFiltration,
}

impl Filtration {
    fn vertex(&self, name: &str) -> PyResult<usize> {
        self.inner
            .ar()
            .algebra()
            .quiver()
            .vertex(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown vertex {name}")))
    }

    fn nodes(&self, x: usize, y: usize) -> PyResult<()> {
        let n = self.inner.len();
        if x < n && y < n {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("nodes ({x}, {y}) out of range")))
        }
    }
}

#[pymethods]
impl Filtration {
    /// The nilpotency index r_A computed directly.
    #[getter]
    fn nilpotency_index(&self) -> usize {
        self.inner.nilpotency_index()
    }

    /// r_a: the radical length of P_a -> S_a -> I_a.
    fn r(&self, vertex: &str) -> PyResult<usize> {
        self.inner.canonical_r(self.vertex(vertex)?).map_err(to_py)
    }

    fn hom_dim(&self, x: usize, y: usize) -> PyResult<usize> {
        self.nodes(x, y)?;
        Ok(self.inner.hom(x, y).dim())
    }

    fn layer_dim(&self, n: usize, x: usize, y: usize) -> PyResult<usize> {
        self.nodes(x, y)?;
        Ok(self.inner.layer_dim(n, x, y))
    }

    fn irreducible_dim(&self, x: usize, y: usize) -> PyResult<usize> {
        self.nodes(x, y)?;
        Ok(self.inner.irreducible_dim(x, y))
    }

    /// r_A by a reduction method, as a report dictionary.
    #[pyo3(signature = (method = "auto", verify = true))]
    fn index<'py>(&self, py: Python<'py>, method: &str, verify: bool) -> PyResult<Bound<'py, PyAny>> {
        let m: Method = method.parse().map_err(PyValueError::new_err)?;
        let report = nilpotency_index(&self.inner, m, verify).map_err(to_py)?;
        json_loads(py, &report.to_json())
    }

    /// Runs hypothesis checkers; `theorem` is one of A, corollary, prop33, B, C, D, lemmas, all.
    #[pyo3(signature = (theorem = "all", text = false))]
    fn check<'py>(&self, py: Python<'py>, theorem: &str, text: bool) -> PyResult<Bound<'py, PyAny>> {
        let c: Check = theorem.parse().map_err(PyValueError::new_err)?;
        let report = run_checks(&self.inner, c).map_err(to_py)?;
        if text {
            Ok(report.to_text().into_pyobject(py)?.into_any())
        } else {
            json_loads(py, &report.to_json())
        }
    }
}

/// One-shot: r_A of a presentation by `method`.
#[pyfunction]
#[pyo3(signature = (text, method = "auto"))]
fn index<'py>(py: Python<'py>, text: &str, method: &str) -> PyResult<Bound<'py, PyAny>> {
    let alg = Algebra::new(text, DEFAULT_PATH_CAP)?;
    let ar = alg.ar_quiver(py, 10_000, 10_000)?;
    ar.filtration(py, "almost-split")?.index(py, method, true)
}

/// Adds the classes, functions and exceptions to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<Algebra>()?;
    m.add_class::<ARQuiverPy>()?;
    m.add_class::<Filtration>()?;
    m.add_function(wrap_pyfunction!(index, m)?)?;
    m.add("NilindexError", py.get_type::<NilindexError>())?;
    m.add("InvalidPresentation", py.get_type::<InvalidPresentation>())?;
    m.add("LimitsExceeded", py.get_type::<LimitsExceeded>())?;
    m.add("MethodInapplicable", py.get_type::<MethodInapplicable>())?;
    m.add("Inconsistency", py.get_type::<Inconsistency>())?;
    Ok(())
}

#[pymodule]
fn nilindex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
