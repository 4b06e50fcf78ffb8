use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cremona::conelab::{self, ConeWitness, LiftChoice};
use cremona::curvegenus;
use cremona::exactalg::{self, QMatrix, Q};
use cremona::frontend::{self, Render};
use cremona::mapalg;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_point(text: &str) -> PyResult<exactalg::Point> {
    frontend::parse_point(text).map_err(err)
}

/// Homogeneous or inhomogeneous polynomial with rational coefficients.
#[pyclass(name = "Poly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(exactalg::Poly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str, nvars: usize) -> PyResult<Self> {
        frontend::parse_poly(text, nvars).map(PyPoly).map_err(err)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.0.nvars()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    /// Multiplicity at a point written as `"[a:b:c]"`.
    fn multiplicity_at(&self, point: &str) -> PyResult<u32> {
        exactalg::multiplicity_at(&self.0, &parse_point(point)?).map_err(err)
    }

    /// Equality up to a nonzero scalar.
    fn proj_eq(&self, other: &PyPoly) -> bool {
        self.0.proj_eq(&other.0)
    }

    fn is_squarefree(&self) -> bool {
        exactalg::is_squarefree(&self.0)
    }

    fn __add__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.try_add(&other.0).map(PyPoly).map_err(err)
    }

    fn __sub__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(PyPoly).map_err(err)
    }

    fn __mul__(&self, other: &PyPoly) -> PyResult<Self> {
        self.0.try_mul(&other.0).map(PyPoly).map_err(err)
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        PyPoly(self.0.pow(k))
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}', {})", self.0.render(), self.0.nvars())
    }
}

/// A verified pair of mutually inverse maps of projective space.
#[pyclass(name = "BirationalMap", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBirationalMap(mapalg::BirationalMap);

#[pymethods]
impl PyBirationalMap {
    /// Both tuples are written as `"[f0 : f1 : ...]"`; the pair is verified.
    #[new]
    fn new(forward: &str, inverse: &str, nvars: usize) -> PyResult<Self> {
        let f = frontend::parse_map(forward, nvars).map_err(err)?;
        let g = frontend::parse_map(inverse, nvars).map_err(err)?;
        mapalg::BirationalMap::new(f, g).map(Self).map_err(err)
    }

    #[staticmethod]
    fn quadratic(dim: usize) -> PyResult<Self> {
        mapalg::BirationalMap::standard_quadratic(dim)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn identity(dim: usize) -> Self {
        Self(mapalg::BirationalMap::identity(dim))
    }

    /// Linear map from matrix rows; entries may be ints, strings like `"3/2"`
    /// or `fractions.Fraction`.
    #[staticmethod]
    fn linear(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        let text = v.str()?.to_string();
                        text.trim()
                            .parse::<Q>()
                            .map_err(|_| err(format!("not a rational: {text}")))
                    })
                    .collect::<PyResult<Vec<Q>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        let m = QMatrix::new(rows).map_err(err)?;
        mapalg::BirationalMap::linear(&m).map(Self).map_err(err)
    }

    #[getter]
    fn forward(&self) -> String {
        self.0.forward().render()
    }

    #[getter]
    fn inverse(&self) -> String {
        self.0.inverse().render()
    }

    #[getter]
    fn cofactor_fwd(&self) -> PyPoly {
        PyPoly(self.0.cofactor_fwd().clone())
    }

    #[getter]
    fn cofactor_bwd(&self) -> PyPoly {
        PyPoly(self.0.cofactor_bwd().clone())
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn inverted(&self) -> Self {
        Self(self.0.inverted())
    }

    /// Apply `self`, then `other`.
    fn then(&self, other: &PyBirationalMap) -> PyResult<Self> {
        mapalg::compose(&self.0, &other.0).map(Self).map_err(err)
    }

    /// Strict transform of the hypersurface `s`.
    fn push(&self, s: &PyPoly) -> PyResult<PyPoly> {
        mapalg::pushforward(&self.0, &s.0).map(PyPoly).map_err(err)
    }

    /// Lift to the next projective space, fixing `[0:...:0:1]`.
    #[pyo3(signature = (pivot = 0))]
    fn lift(&self, pivot: usize) -> PyResult<Self> {
        let nvars = self.0.forward().nvars();
        if pivot >= nvars {
            return Err(err(format!(
                "pivot x{pivot} out of range for {nvars} variables"
            )));
        }
        let choice = LiftChoice::pivot(pivot, nvars, self.0.degree());
        conelab::lift_cone_map(&self.0, &choice)
            .map(Self)
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.render()
    }

    fn __repr__(&self) -> String {
        format!("BirationalMap{}", self.0.render())
    }
}

/// A cone: a hypersurface with a vertex of multiplicity equal to its degree.
#[pyclass(name = "Cone", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCone(ConeWitness);

#[pymethods]
impl PyCone {
    /// The cone over a squarefree homogeneous base, with vertex `[0:...:0:1]`.
    #[new]
    fn new(base: &PyPoly) -> PyResult<Self> {
        ConeWitness::cone_over(&base.0).map(Self).map_err(err)
    }

    /// A cone given by its equation and a claimed vertex `"[a:b:c:d]"`.
    #[staticmethod]
    fn from_equation(equation: &PyPoly, vertex: &str) -> PyResult<Self> {
        ConeWitness::from_equation(&equation.0, &parse_point(vertex)?)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn equation(&self) -> PyPoly {
        PyPoly(self.0.equation().clone())
    }

    #[getter]
    fn base(&self) -> PyPoly {
        PyPoly(self.0.base().clone())
    }

    #[getter]
    fn vertex(&self) -> String {
        self.0.vertex().render()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "GenusReport", frozen, skip_from_py_object)]
struct PyGenusReport(curvegenus::GenusReport);

#[pymethods]
impl PyGenusReport {
    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree
    }

    #[getter]
    fn arithmetic_genus(&self) -> u64 {
        self.0.arithmetic_genus
    }

    #[getter]
    fn geometric_genus(&self) -> u64 {
        self.0.geometric_genus
    }

    /// `(point, multiplicity, delta)` for each singular point.
    #[getter]
    fn singularities(&self) -> Vec<(String, u32, u64)> {
        self.0
            .singularities
            .iter()
            .map(|s| (s.point.render(), s.multiplicity, s.delta))
            .collect()
    }

    fn __str__(&self) -> String {
        self.0.render()
    }
}

#[pyfunction]
fn genus(curve: &PyPoly) -> PyResult<PyGenusReport> {
    curvegenus::geometric_genus(&curve.0)
        .map(PyGenusReport)
        .map_err(err)
}

/// Whether two cones in P^3 are Cremona equivalent, with the full report.
#[pyfunction]
#[pyo3(signature = (first, second, seed = 0))]
fn decide_p3(first: &PyCone, second: &PyCone, seed: u64) -> PyResult<(bool, String)> {
    let d = curvegenus::decide_cone_equivalence_p3(&first.0, &second.0, seed).map_err(err)?;
    Ok((d.equivalent, d.to_string()))
}

/// Map sending the cone over `c1` to the cone over `c2`, built from `psi`.
#[pyfunction]
fn witness(c1: &PyPoly, c2: &PyPoly, psi: &PyBirationalMap) -> PyResult<PyBirationalMap> {
    conelab::cone_equivalence_witness(&c1.0, &c2.0, &psi.0)
        .map(PyBirationalMap)
        .map_err(err)
}

/// The quadric cone, the lift of the standard quadratic map, and the image plane.
#[pyfunction]
fn quadric_cone_to_plane() -> (PyCone, PyBirationalMap, PyPoly) {
    let (cone, lift, plane) = conelab::quadric_cone_to_plane();
    (PyCone(cone), PyBirationalMap(lift), PyPoly(plane))
}

/// Runs the command-line driver; returns `(exit code, stdout, stderr)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = frontend::run(std::iter::once("cremona".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pycremona(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyBirationalMap>()?;
    m.add_class::<PyCone>()?;
    m.add_class::<PyGenusReport>()?;
    m.add_function(wrap_pyfunction!(genus, m)?)?;
    m.add_function(wrap_pyfunction!(decide_p3, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_cone_to_plane, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
