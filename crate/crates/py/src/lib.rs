//! Python bindings for `resgraph`, importable as `resgraph`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use resgraph::graph::{automorphism_count, canonical_form, is_isomorphic, parse_graph_expr};
use resgraph::machines::{interpret, interpret_modifiable};
use resgraph::randomness::{self, DegreeDistribution, Likelihood, Probability};
use resgraph::verify::{self, Proposition};
use resgraph::{trees, Choice, ConstructionTrace, InstructionString, MemoryModel, RuleSet};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr>(s: &str) -> PyResult<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(err)
}

fn fraction<'py>(py: Python<'py>, l: &Likelihood) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((l.to_string(),))
}

fn json<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((s,))
}

/// Undirected simple graph on vertices `1..=n`.
#[pyclass(name = "Graph", module = "resgraph", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(resgraph::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        resgraph::Graph::from_edges(n, &edges).map(PyGraph).map_err(err)
    }

    /// Builds a standard graph from an expression such as `"K3"`, `"C5"` or `"K2,3"`.
    #[staticmethod]
    fn parse(expr: &str) -> PyResult<Self> {
        parse_graph_expr(expr).map(PyGraph).map_err(err)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        resgraph::Graph::from_json(s).map(PyGraph).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && (1..=self.0.n()).contains(&i) && (1..=self.0.n()).contains(&j) && self.0.has_edge(i, j)
    }

    fn degrees(&self) -> Vec<usize> {
        self.0.degrees()
    }

    fn complement(&self) -> Self {
        PyGraph(self.0.complement())
    }

    /// Relabelling-invariant certificate as a string.
    fn canonical_form(&self) -> PyResult<String> {
        canonical_form(&self.0).map(|c| c.to_string()).map_err(err)
    }

    fn automorphism_count(&self) -> PyResult<u64> {
        automorphism_count(&self.0).map_err(err)
    }

    fn is_isomorphic(&self, other: &PyGraph) -> PyResult<bool> {
        is_isomorphic(&self.0, &other.0).map_err(err)
    }

    fn is_tree(&self) -> bool {
        self.0.is_tree()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.0.n(), self.0.edges())
    }
}

/// Result of running a machine on an instruction string.
#[pyclass(name = "Construction", module = "resgraph", frozen)]
struct PyConstruction(ConstructionTrace);

#[pymethods]
impl PyConstruction {
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph.graph.clone())
    }

    /// Vertex labels as a `0`/`1` string.
    #[getter]
    fn labels(&self) -> String {
        InstructionString::new(self.0.graph.labels.clone()).to_string()
    }

    #[getter]
    fn rule(&self) -> String {
        self.0.rule.to_string()
    }

    #[getter]
    fn model(&self) -> String {
        self.0.model.to_string()
    }

    /// `(instruction_bits, memory_bits, random_bits)`.
    #[getter]
    fn cost(&self) -> (u64, u64, u64) {
        let c = self.0.cost;
        (c.instruction_bits, c.memory_bits, c.random_bits)
    }

    fn graph_at(&self, t: usize) -> PyResult<PyGraph> {
        if t > self.0.steps.len() {
            return Err(PyValueError::new_err(format!("step {t} is past the end")));
        }
        Ok(PyGraph(self.0.graph_at(t)))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Construction(rule={}, model={}, x={})", self.0.rule, self.0.model, self.0.x)
    }
}

fn parse_choices(s: &str) -> PyResult<Vec<Choice>> {
    s.chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            's' | 'S' => Ok(Choice::Standard),
            'm' | 'M' => Ok(Choice::Modify),
            other => Err(PyValueError::new_err(format!("choice {other:?} is not s or m"))),
        })
        .collect()
}

/// Runs `rule` (e.g. `"0>1,1>-"`) under `model` on the bit string `x`.
#[pyfunction]
#[pyo3(signature = (rule, model, x, choices = None))]
fn build(rule: &str, model: &str, x: &str, choices: Option<&str>) -> PyResult<PyConstruction> {
    let rule: RuleSet = parse(rule)?;
    let model: MemoryModel = parse(model)?;
    let x: InstructionString = parse(x)?;
    let trace = match (choices, model) {
        (Some(c), MemoryModel::ModifiableMemory) => interpret_modifiable(rule, &x, &parse_choices(c)?),
        (Some(_), _) => return Err(PyValueError::new_err("choices only apply to the modifiable model")),
        (None, _) => interpret(rule, model, &x),
    };
    trace.map(PyConstruction).map_err(err)
}

/// Exhaustive check of a proposition; returns the JSON report as a dict.
#[pyfunction]
#[pyo3(signature = (proposition, max_n = 8))]
fn verify_proposition<'py>(py: Python<'py>, proposition: &str, max_n: usize) -> PyResult<Bound<'py, PyAny>> {
    let prop: Proposition = parse(proposition)?;
    let report = py.detach(|| verify::verify_proposition(prop, max_n)).map_err(err)?;
    json(py, &report.to_json())
}

/// Canonical forms of every graph `rule` builds on strings of length `n`.
#[pyfunction]
fn enumerate_outputs(py: Python<'_>, rule: &str, model: &str, n: usize) -> PyResult<Vec<String>> {
    let rule: RuleSet = parse(rule)?;
    let model: MemoryModel = parse(model)?;
    let set = py.detach(|| verify::enumerate_outputs(rule, model, n)).map_err(err)?;
    Ok(set.iter().map(|c| c.to_string()).collect())
}

#[pyfunction]
fn expressiveness_count(py: Python<'_>, model: &str, n: usize) -> PyResult<usize> {
    let model: MemoryModel = parse(model)?;
    py.detach(|| verify::expressiveness_count(model, n)).map_err(err)
}

/// Every `(rule, x)` pair (plus choices under the modifiable model) that builds a copy of `graph`.
#[pyfunction]
fn find_constructions(py: Python<'_>, graph: &PyGraph, model: &str) -> PyResult<Vec<(String, String, Option<String>)>> {
    let model: MemoryModel = parse(model)?;
    let found = py.detach(|| verify::find_constructions(&graph.0, model)).map_err(err)?;
    Ok(found
        .into_iter()
        .map(|c| {
            let choices = c.choices.map(|cs| {
                cs.iter().map(|ch| if *ch == Choice::Modify { 'm' } else { 's' }).collect()
            });
            (c.rule.to_string(), c.x.to_string(), choices)
        })
        .collect())
}

/// Exact probability that uniform vertex addition builds a copy of `graph`, as a `Fraction`.
#[pyfunction]
fn likelihood_exact<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let l = py.detach(|| randomness::likelihood_exact(&graph.0)).map_err(err)?;
    fraction(py, &l)
}

#[pyfunction]
fn likelihood_bounds<'py>(py: Python<'py>, graph: &PyGraph) -> PyResult<Bound<'py, PyTuple>> {
    let (lo, hi) = randomness::likelihood_bounds(&graph.0).map_err(err)?;
    let frac = py.import("fractions")?.getattr("Fraction")?;
    PyTuple::new(py, [frac.call1((lo.to_string(),))?, frac.call1((hi.to_string(),))?])
}

/// Monte Carlo estimate; returns `(estimate, stderr)`.
#[pyfunction]
fn likelihood_mc(py: Python<'_>, graph: &PyGraph, samples: u64, seed: u64) -> PyResult<(f64, f64)> {
    if samples == 0 {
        return Err(PyValueError::new_err("samples must be positive"));
    }
    let est = py.detach(|| randomness::likelihood_mc(&graph.0, samples, seed)).map_err(err)?;
    Ok((est.estimate, est.stderr))
}

/// Likelihood of every class on `n` vertices, as the JSON report dict.
#[pyfunction]
fn likelihood_extremes<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| randomness::likelihood_extremes(n)).map_err(err)?;
    json(py, &report.to_json())
}

#[pyfunction]
fn sample_gnp(n: usize, p: &str, seed: u64) -> PyResult<PyGraph> {
    let p: Probability = parse(p)?;
    Ok(PyGraph(randomness::sample_gnp(n, &p, seed)))
}

/// `dist` is `"uniform"` or `"binomial:p"`.
#[pyfunction]
#[pyo3(signature = (n, seed, dist = "uniform"))]
fn sample_vertex_addition(n: usize, seed: u64, dist: &str) -> PyResult<PyGraph> {
    let dist: DegreeDistribution = parse(dist)?;
    Ok(PyGraph(randomness::sample_vertex_addition(n, &dist, seed)))
}

#[pyfunction]
fn randomness_cost_a(n: usize) -> PyResult<u64> {
    if n < 2 {
        return Err(PyValueError::new_err("n must be at least 2"));
    }
    Ok(randomness::randomness_cost_a(n))
}

/// Uniform attachment tree; returns the parent vector `[0, 0, p2, ..., pn]`.
#[pyfunction]
fn sample_ua(n: usize, seed: u64) -> PyResult<Vec<usize>> {
    if n == 0 {
        return Err(PyValueError::new_err("a tree needs a vertex"));
    }
    let pv = trees::sample_ua(n, seed).parent_vector().expect("sampled trees are recursive");
    Ok(pv.into())
}

#[pyfunction]
fn tree_from_parents(parents: Vec<usize>) -> PyResult<PyGraph> {
    let pv = trees::ParentVector::try_from(parents).map_err(err)?;
    Ok(PyGraph(trees::build_tree_from_instructions(&pv).graph().clone()))
}

#[pyfunction]
fn prufer_encode(tree: &PyGraph) -> PyResult<Vec<usize>> {
    trees::prufer_encode(&tree.0).map_err(err)
}

#[pyfunction]
fn prufer_decode(seq: Vec<usize>) -> PyResult<PyGraph> {
    trees::prufer_decode(&seq).map(PyGraph).map_err(err)
}

#[pyfunction]
fn ua_likelihood_exact<'py>(py: Python<'py>, tree: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let l = py.detach(|| trees::ua_likelihood_exact(&tree.0)).map_err(err)?;
    fraction(py, &l)
}

/// Module initializer; also usable to register the module in an embedded interpreter.
#[pymodule]
#[pyo3(name = "resgraph")]
pub fn resgraph_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyConstruction>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(verify_proposition, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_outputs, m)?)?;
    m.add_function(wrap_pyfunction!(expressiveness_count, m)?)?;
    m.add_function(wrap_pyfunction!(find_constructions, m)?)?;
    m.add_function(wrap_pyfunction!(likelihood_exact, m)?)?;
    m.add_function(wrap_pyfunction!(likelihood_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(likelihood_mc, m)?)?;
    m.add_function(wrap_pyfunction!(likelihood_extremes, m)?)?;
    m.add_function(wrap_pyfunction!(sample_gnp, m)?)?;
    m.add_function(wrap_pyfunction!(sample_vertex_addition, m)?)?;
    m.add_function(wrap_pyfunction!(randomness_cost_a, m)?)?;
    m.add_function(wrap_pyfunction!(sample_ua, m)?)?;
    m.add_function(wrap_pyfunction!(tree_from_parents, m)?)?;
    m.add_function(wrap_pyfunction!(prufer_encode, m)?)?;
    m.add_function(wrap_pyfunction!(prufer_decode, m)?)?;
    m.add_function(wrap_pyfunction!(ua_likelihood_exact, m)?)?;
    Ok(())
}
