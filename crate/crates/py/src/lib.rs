//! Python bindings: `import dimpy`.

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dim_core::generate::{gen_instance as core_gen, Family, GenParams, WeightSpec};
use dim_core::oracle;
use dim_core::{Algorithm, SolveError, SolveOptions};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A weighted simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "dimpy", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    pub inner: dim_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> PyResult<Self> {
        dim_core::Graph::new(n, edges).map(|inner| PyGraph { inner }).map_err(value_err)
    }

    /// Parses the `p dim n m` / `e u v w` text format (1-based vertices).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        dim_core::Graph::parse(text.as_bytes()).map(|inner| PyGraph { inner }).map_err(value_err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    /// `(u, v, weight)` for every edge, indexed by edge id.
    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.edges().iter().map(|e| (e.u, e.v, e.weight)).collect()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.n() {
            return Err(PyIndexError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).iter().map(|&(u, _)| u).collect())
    }

    fn is_dominating(&self, vertices: Vec<usize>) -> PyResult<bool> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.inner.n()) {
            return Err(PyIndexError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.is_dominating(&vertices))
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// A dominating induced matching: edge ids of the graph it was computed on.
#[pyclass(name = "Dim", module = "dimpy", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDim {
    pub edges: Vec<usize>,
    pub weight: f64,
}

#[pymethods]
impl PyDim {
    fn __repr__(&self) -> String {
        format!("Dim(weight={}, edges={:?})", self.weight, self.edges)
    }
}

impl From<dim_core::Dim> for PyDim {
    fn from(d: dim_core::Dim) -> Self {
        PyDim { edges: d.edges, weight: d.weight }
    }
}

#[pyclass(name = "Solution", module = "dimpy", frozen, get_all)]
pub struct PySolution {
    /// `None` when the graph has no DIM.
    pub dim: Option<PyDim>,
    pub algorithm: String,
    /// Domset solver only.
    pub roots_explored: Option<u64>,
    pub leaves: Option<u64>,
    /// MIS solver only.
    pub mis_count: Option<u64>,
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        match &self.dim {
            Some(d) => format!("Solution(algorithm={}, weight={})", self.algorithm, d.weight),
            None => format!("Solution(algorithm={}, no DIM)", self.algorithm),
        }
    }
}

#[pyclass(name = "Count", module = "dimpy", frozen, get_all)]
pub struct PyCount {
    pub total: u128,
    pub min_weight: Option<f64>,
    pub min_count: u128,
}

#[pymethods]
impl PyCount {
    fn __repr__(&self) -> String {
        self.render()
    }

    /// The line printed by `dimsolve count`.
    fn render(&self) -> String {
        dim_core::CountResult { total: self.total, min_weight: self.min_weight, min_count: self.min_count }
            .render()
            .trim_end()
            .to_string()
    }
}

impl From<dim_core::CountResult> for PyCount {
    fn from(c: dim_core::CountResult) -> Self {
        PyCount { total: c.total, min_weight: c.min_weight, min_count: c.min_count }
    }
}

/// Result of removing isolated vertices and isolated edges.
#[pyclass(name = "Preprocessed", module = "dimpy", frozen, get_all)]
pub struct PyPreprocessed {
    pub residual: PyGraph,
    pub forced_edges: Vec<usize>,
    pub forced_weight: f64,
    pub removed_isolated_vertices: Vec<usize>,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// Minimum-weight DIM. `algo` is one of `auto`, `domset`, `mis`, `brute`.
#[pyfunction]
#[pyo3(signature = (graph, algo="auto", threads=1))]
fn solve(py: Python<'_>, graph: &PyGraph, algo: &str, threads: usize) -> PyResult<PySolution> {
    let algorithm: Algorithm = algo.parse().map_err(value_err)?;
    let g = &graph.inner;
    let sol = py
        .detach(|| dim_core::solve(g, SolveOptions { algorithm: Some(algorithm), threads, trace: None }))
        .map_err(|e| match e {
            SolveError::InvalidWitness => PyRuntimeError::new_err(e.to_string()),
            _ => value_err(e),
        })?;
    Ok(PySolution {
        dim: sol.dim.map(PyDim::from),
        algorithm: sol.algorithm.to_string(),
        roots_explored: sol.domset_stats.as_ref().map(|s| s.roots_explored),
        leaves: sol.domset_stats.as_ref().map(|s| s.total_leaves()),
        mis_count: sol.mis_count,
    })
}

/// Number of DIMs, the minimum weight, and how many DIMs attain it.
#[pyfunction]
fn count(py: Python<'_>, graph: &PyGraph) -> PyCount {
    let g = &graph.inner;
    py.detach(|| dim_core::count(g)).into()
}

/// True iff the edge ids form a dominating induced matching.
#[pyfunction]
fn validate_dim(graph: &PyGraph, edges: Vec<usize>) -> bool {
    edges.iter().all(|&e| e < graph.inner.m()) && dim_core::validate_dim(&graph.inner, &edges)
}

/// Exhaustive reference over all black/white colorings (n <= 20).
/// Returns `(min_weight, all_dims)`.
#[pyfunction]
fn brute_solve(graph: &PyGraph) -> PyResult<(Option<f64>, Vec<Vec<usize>>)> {
    let r = oracle::brute_solve(&graph.inner).map_err(value_err)?;
    Ok((r.min_weight, r.all_dims))
}

/// All maximal independent sets, each sorted, in enumeration order.
#[pyfunction]
#[pyo3(signature = (graph, limit=None))]
fn enumerate_mis(graph: &PyGraph, limit: Option<usize>) -> Vec<Vec<usize>> {
    dim_core::enumerate_mis(&graph.inner).take(limit.unwrap_or(usize::MAX)).collect()
}

#[pyfunction]
fn find_dominating_set(graph: &PyGraph) -> Vec<usize> {
    dim_core::find_dominating_set(&graph.inner)
}

#[pyfunction]
fn preprocess(graph: &PyGraph) -> PyPreprocessed {
    let p = dim_core::preprocess(&graph.inner);
    PyPreprocessed {
        residual: PyGraph { inner: p.residual },
        forced_edges: p.forced_edges,
        forced_weight: p.forced_weight,
        removed_isolated_vertices: p.removed_isolated_vertices,
        vertex_map: p.vertex_map,
        edge_map: p.edge_map,
    }
}

/// Deterministic instance generator; `weights` is `unit` or `uniform:lo:hi`.
#[pyfunction]
#[pyo3(signature = (family, n, seed=0, weights="unit", p=0.5))]
fn gen_instance(family: &str, n: usize, seed: u64, weights: &str, p: f64) -> PyResult<PyGraph> {
    let family: Family = family.parse().map_err(value_err)?;
    let weights: WeightSpec = weights.parse().map_err(value_err)?;
    core_gen(&GenParams { family, n, seed, weights, p }).map(|inner| PyGraph { inner }).map_err(value_err)
}

#[pymodule]
pub fn dimpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDim>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PyCount>()?;
    m.add_class::<PyPreprocessed>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(validate_dim, m)?)?;
    m.add_function(wrap_pyfunction!(brute_solve, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_mis, m)?)?;
    m.add_function(wrap_pyfunction!(find_dominating_set, m)?)?;
    m.add_function(wrap_pyfunction!(preprocess, m)?)?;
    m.add_function(wrap_pyfunction!(gen_instance, m)?)?;
    Ok(())
}
