//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs may also be `int` or `"p/q"` strings. Boundary pairs are tuples
//! `(i, (j1, j2, ...))`.

use jacwall::rational::parse_rational;
use jacwall::{BoundaryPair, Rational};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyTuple};

create_exception!(jacwall, JacwallError, PyValueError);
create_exception!(jacwall, DegenerateParameterError, JacwallError);

fn err(e: jacwall::Error) -> PyErr {
    match e {
        jacwall::Error::DegenerateParameter(_) => DegenerateParameterError::new_err(e.to_string()),
        _ => JacwallError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((*q.numer(), *q.denom()))
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(k) = obj.extract::<i64>() {
        return Ok(Rational::from_integer(k));
    }
    if let Ok(s) = obj.extract::<String>() {
        return parse_rational(&s).map_err(|e| JacwallError::new_err(e.to_string()));
    }
    let num: i64 = obj.getattr("numerator")?.extract()?;
    let den: i64 = obj.getattr("denominator")?.extract()?;
    if den == 0 {
        return Err(JacwallError::new_err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn pair_tuple<'py>(py: Python<'py>, p: BoundaryPair) -> PyResult<Bound<'py, PyTuple>> {
    let s = PyTuple::new(py, p.markings())?;
    PyTuple::new(py, [p.i.into_pyobject(py)?.into_any(), s.into_any()])
}

fn pair(obj: &Bound<'_, PyAny>) -> PyResult<BoundaryPair> {
    let (i, s): (u32, Vec<usize>) = obj.extract()?;
    if s.iter().any(|&j| j == 0 || j > 64) {
        return Err(JacwallError::new_err("markings must lie in 1..=64"));
    }
    Ok(BoundaryPair::new(i, s))
}

fn json_text(v: &serde_json::Value) -> String {
    jacwall::json::to_string(v)
}

fn parse_json(text: &str) -> PyResult<serde_json::Value> {
    jacwall::json::parse(text).map_err(err)
}

#[pyclass(name = "MarkedGraph", module = "jacwall", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyMarkedGraph(pub jacwall::MarkedGraph);

#[pymethods]
impl PyMarkedGraph {
    /// `genera[v]`, edges as vertex index pairs, `markings[j - 1]` the vertex
    /// carrying marking `j`.
    #[new]
    fn new(genera: Vec<u32>, edges: Vec<(usize, usize)>, markings: Vec<usize>) -> PyResult<Self> {
        jacwall::MarkedGraph::from_parts(&genera, &edges, &markings).map(Self).map_err(err)
    }

    #[staticmethod]
    fn two_vertex(g: u32, n: usize, pair_: &Bound<'_, PyAny>) -> PyResult<Self> {
        jacwall::two_vertex_graph(g, n, pair(pair_)?).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        jacwall::json::graph_from_json(&parse_json(text)?).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        json_text(&jacwall::json::graph_to_json(&self.0))
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.0.genus()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.0.num_vertices()
    }

    #[getter]
    fn genera(&self) -> Vec<u32> {
        self.0.genera().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    #[getter]
    fn markings(&self) -> Vec<usize> {
        self.0.markings().to_vec()
    }

    fn loop_free_circuit_rank(&self) -> usize {
        self.0.loop_free_circuit_rank()
    }

    fn __repr__(&self) -> String {
        format!(
            "MarkedGraph(genera={:?}, edges={:?}, markings={:?})",
            self.0.genera(),
            self.0.edges(),
            self.0.markings()
        )
    }
}

#[pyclass(name = "PolytopeLabel", module = "jacwall", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct PyPolytopeLabel(pub jacwall::PolytopeLabel);

#[pymethods]
impl PyPolytopeLabel {
    /// `values` follows the order of `admissible_pairs(g, n)`.
    #[new]
    fn new(g: u32, n: usize, values: Vec<i64>) -> PyResult<Self> {
        jacwall::PolytopeLabel::from_values(g, n, &values).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        jacwall::json::label_from_json(&parse_json(text)?).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        json_text(&jacwall::json::label_to_json(&self.0))
    }

    #[getter]
    fn g(&self) -> u32 {
        self.0.g()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn __getitem__(&self, key: &Bound<'_, PyAny>) -> PyResult<i64> {
        let p = pair(key)?;
        let (q, flipped) = p.normalized(self.0.g(), self.0.n());
        match self.0.get(q) {
            Some(d) if flipped => Ok(i64::from(self.0.g()) - 1 - d),
            Some(d) => Ok(d),
            None => Err(JacwallError::new_err(format!("pair {p} is not admissible"))),
        }
    }

    fn entries<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (&p, &v) in self.0.entries() {
            d.set_item(pair_tuple(py, p)?, v)?;
        }
        Ok(d)
    }

    fn is_theta_flat(&self) -> bool {
        self.0.is_theta_flat()
    }

    fn is_theta_reduced(&self) -> bool {
        self.0.is_theta_reduced()
    }

    fn __repr__(&self) -> String {
        let values: Vec<i64> = self.0.entries().values().copied().collect();
        format!("PolytopeLabel({}, {}, {:?})", self.0.g(), self.0.n(), values)
    }
}

#[pyclass(name = "StabilityParameter", module = "jacwall", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct PyStabilityParameter(pub jacwall::StabilityParameter);

#[pymethods]
impl PyStabilityParameter {
    /// `coords` maps `(i, S)` to `φ⁺(i, S)`.
    #[new]
    fn new(g: u32, n: usize, coords: &Bound<'_, PyDict>) -> PyResult<Self> {
        let mut entries = Vec::with_capacity(coords.len());
        for (k, v) in coords.iter() {
            entries.push((pair(&k)?, rational(&v)?));
        }
        jacwall::StabilityParameter::new(g, n, entries).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_degrees(g: u32, n: usize, degrees: Vec<i64>) -> PyResult<Self> {
        jacwall::StabilityParameter::from_degrees(g, n, &degrees).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_label(label: &PyPolytopeLabel) -> Self {
        Self(jacwall::StabilityParameter::from_label(&label.0))
    }

    #[staticmethod]
    fn canonical(g: u32, n: usize) -> PyResult<Self> {
        jacwall::StabilityParameter::canonical(g, n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        jacwall::json::parameter_from_json(&parse_json(text)?).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        json_text(&jacwall::json::parameter_to_json(&self.0))
    }

    #[getter]
    fn g(&self) -> u32 {
        self.0.g()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn phi_plus<'py>(&self, py: Python<'py>, key: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let p = pair(key)?;
        match self.0.phi_plus(p) {
            Some(q) => fraction(py, q),
            None => Err(JacwallError::new_err(format!("pair {p} is not admissible"))),
        }
    }

    fn is_nondegenerate(&self) -> bool {
        self.0.is_nondegenerate()
    }

    /// Description of the first wall the parameter lies on, if any.
    fn first_wall(&self) -> Option<String> {
        self.0.first_wall().map(|w| w.to_string())
    }

    fn polytope_label(&self) -> PyResult<PyPolytopeLabel> {
        self.0.polytope_label().map(PyPolytopeLabel).map_err(err)
    }

    fn is_theta_flat(&self) -> PyResult<bool> {
        self.0.is_theta_flat().map_err(err)
    }

    /// Vertex values of the induced parameter on a tree-like graph.
    fn extend_to_graph<'py>(&self, py: Python<'py>, graph: &PyMarkedGraph) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let gp = self.0.extend_to_graph(&graph.0).map_err(err)?;
        gp.values().iter().map(|&q| fraction(py, q)).collect()
    }

    fn __repr__(&self) -> String {
        format!("StabilityParameter.from_json({:?})", serde_json::to_string(&jacwall::json::parameter_to_json(&self.0)).unwrap_or_default())
    }
}

#[pyclass(name = "DivisorClass", module = "jacwall", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
pub struct PyDivisorClass(pub jacwall::DivisorClass);

#[pymethods]
impl PyDivisorClass {
    #[new]
    #[pyo3(signature = (g, n, lambda_=None, psi=None, delta_irr=None, delta=None))]
    fn new(
        g: u32,
        n: usize,
        lambda_: Option<&Bound<'_, PyAny>>,
        psi: Option<&Bound<'_, PyList>>,
        delta_irr: Option<&Bound<'_, PyAny>>,
        delta: Option<&Bound<'_, PyDict>>,
    ) -> PyResult<Self> {
        let zero = Rational::from_integer(0);
        let lambda = lambda_.map(rational).transpose()?.unwrap_or(zero);
        let psi = match psi {
            Some(list) => list.iter().map(|x| rational(&x)).collect::<PyResult<Vec<_>>>()?,
            None => vec![zero; n],
        };
        let delta_irr = delta_irr.map(rational).transpose()?.unwrap_or(zero);
        let mut terms = Vec::new();
        if let Some(d) = delta {
            for (k, v) in d.iter() {
                terms.push((pair(&k)?, rational(&v)?));
            }
        }
        jacwall::DivisorClass::new(g, n, lambda, psi, delta_irr, terms).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        jacwall::json::class_from_json(&parse_json(text)?).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        json_text(&jacwall::json::class_to_json(&self.0))
    }

    #[getter]
    fn g(&self) -> u32 {
        self.0.g()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn lambda_<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.0.lambda())
    }

    #[getter]
    fn psi<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.psi_coefficients().iter().map(|&q| fraction(py, q)).collect()
    }

    #[getter]
    fn delta_irr<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.0.delta_irr())
    }

    /// Nonzero boundary coefficients, keyed by normalized pairs.
    #[getter]
    fn delta<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (&p, &c) in self.0.delta_terms() {
            d.set_item(pair_tuple(py, p)?, fraction(py, c)?)?;
        }
        Ok(d)
    }

    fn coefficient<'py>(&self, py: Python<'py>, key: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let p = pair(key)?;
        let (q, _) = p.normalized(self.0.g(), self.0.n());
        fraction(py, self.0.delta(q))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn boundary_is_zero(&self) -> bool {
        self.0.boundary_is_zero()
    }

    fn scaled(&self, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(self.0.scaled(rational(c)?)))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_add(&other.0).map(Self).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_sub(&other.0).map(Self).map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("DivisorClass<{}>", self.0)
    }
}

#[pyfunction]
fn admissible_pairs<'py>(py: Python<'py>, g: u32, n: usize) -> PyResult<Vec<Bound<'py, PyTuple>>> {
    jacwall::admissible_pairs(g, n).map_err(err)?.into_iter().map(|p| pair_tuple(py, p)).collect()
}

#[pyfunction]
fn flat_labels(g: u32, n: usize) -> PyResult<Vec<PyPolytopeLabel>> {
    Ok(jacwall::flat_labels(g, n).map_err(err)?.into_iter().map(PyPolytopeLabel).collect())
}

#[pyfunction]
#[pyo3(signature = (g, n, max_vertices=4))]
fn enumerate_tree_type_graphs(g: u32, n: usize, max_vertices: usize) -> PyResult<Vec<PyMarkedGraph>> {
    Ok(jacwall::enumerate_tree_type_graphs(g, n, max_vertices).map_err(err)?.into_iter().map(PyMarkedGraph).collect())
}

/// The unique `φ`-stable multidegree of a tree-like graph, one entry per vertex.
#[pyfunction]
fn stable_multidegree(graph: &PyMarkedGraph, phi: &PyStabilityParameter) -> PyResult<Vec<i64>> {
    let gp = phi.0.extend_to_graph(&graph.0).map_err(err)?;
    let md = jacwall::stable_multidegree(&gp).map_err(err)?;
    Ok(md.degrees().to_vec())
}

#[pyfunction]
fn theta_pullback(phi: &PyStabilityParameter, degrees: Vec<i64>) -> PyResult<PyDivisorClass> {
    jacwall::theta_pullback(&phi.0, &degrees).map(PyDivisorClass).map_err(err)
}

#[pyfunction]
fn wall_crossing(phi1: &PyStabilityParameter, phi2: &PyStabilityParameter) -> PyResult<PyDivisorClass> {
    jacwall::wall_crossing(&phi1.0, &phi2.0).map(PyDivisorClass).map_err(err)
}

#[pyfunction]
fn wall_crossing_single(g: u32, n: usize, key: &Bound<'_, PyAny>, d: i64) -> PyResult<PyDivisorClass> {
    jacwall::wall_crossing_single(g, n, pair(key)?, d).map(PyDivisorClass).map_err(err)
}

#[pyfunction]
fn stable_pairs_class(g: u32, n: usize, degrees: Vec<i64>) -> PyResult<PyDivisorClass> {
    jacwall::stable_pairs_class(g, n, &degrees).map(PyDivisorClass).map_err(err)
}

#[pyfunction]
fn hain_class(g: u32, n: usize, degrees: Vec<i64>) -> PyResult<PyDivisorClass> {
    jacwall::hain_class(g, n, &degrees).map(PyDivisorClass).map_err(err)
}

#[pyfunction]
fn mueller_class(g: u32, n: usize, degrees: Vec<i64>) -> PyResult<PyDivisorClass> {
    jacwall::mueller_class(g, n, &degrees).map(PyDivisorClass).map_err(err)
}

/// `(T, diff)` with `stable_pairs_class = mueller_class + diff`.
#[pyfunction]
fn mueller_comparison<'py>(
    py: Python<'py>,
    g: u32,
    n: usize,
    degrees: Vec<i64>,
) -> PyResult<(Vec<Bound<'py, PyTuple>>, PyDivisorClass)> {
    let cmp = jacwall::mueller_comparison(g, n, &degrees).map_err(err)?;
    let pairs = cmp.pairs.into_iter().map(|p| pair_tuple(py, p)).collect::<PyResult<_>>()?;
    Ok((pairs, PyDivisorClass(cmp.diff)))
}

#[pymodule]
#[pyo3(name = "jacwall")]
pub fn jacwall_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("JacwallError", py.get_type::<JacwallError>())?;
    m.add("DegenerateParameterError", py.get_type::<DegenerateParameterError>())?;
    m.add_class::<PyMarkedGraph>()?;
    m.add_class::<PyPolytopeLabel>()?;
    m.add_class::<PyStabilityParameter>()?;
    m.add_class::<PyDivisorClass>()?;
    m.add_function(wrap_pyfunction!(admissible_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(flat_labels, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_tree_type_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(stable_multidegree, m)?)?;
    m.add_function(wrap_pyfunction!(theta_pullback, m)?)?;
    m.add_function(wrap_pyfunction!(wall_crossing, m)?)?;
    m.add_function(wrap_pyfunction!(wall_crossing_single, m)?)?;
    m.add_function(wrap_pyfunction!(stable_pairs_class, m)?)?;
    m.add_function(wrap_pyfunction!(hain_class, m)?)?;
    m.add_function(wrap_pyfunction!(mueller_class, m)?)?;
    m.add_function(wrap_pyfunction!(mueller_comparison, m)?)?;
    Ok(())
}
