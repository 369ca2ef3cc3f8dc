//! Python bindings. Results cross the boundary as JSON strings in the same
//! shape the `ringext` CLI prints with `--json`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use ringext_core::canonical::{classify_edges, is_infra_integral, is_subintegral, is_t_closed};
use ringext_core::cli::analysis::{Analysis, NagataDocument};
use ringext_core::cli::check::check_extension;
use ringext_core::cli::document::InstanceDocument;
use ringext_core::cli::graph::Graph;
use ringext_core::gen::{random_extension, GenSpec};
use ringext_core::lattice::{brute_force_interval, enumerate_interval, Budget};
use ringext_core::nagata::nagata_report;
use ringext_core::Error;

create_exception!(ringext, BudgetExceeded, PyException);
create_exception!(ringext, InvariantViolation, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Budget { .. } | Error::Rejection { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::Invariant { .. } => InvariantViolation::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn budget(nodes: Option<usize>) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = nodes {
        b.nodes = n;
    }
    b
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializes")
}

/// An extension `R ⊆ S` loaded from an instance document.
#[pyclass(frozen, module = "ringext")]
pub struct Extension {
    inner: ringext_core::Extension,
}

#[pymethods]
impl Extension {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc =
            InstanceDocument::parse(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let inner = doc.build().map_err(to_py)?;
        Ok(Extension { inner })
    }

    fn to_json(&self) -> String {
        InstanceDocument::from_extension(&self.inner).to_json()
    }

    #[getter]
    fn field_order(&self) -> u32 {
        self.inner.ambient().field().order()
    }

    #[getter]
    fn base_dim(&self) -> usize {
        self.inner.base().dim()
    }

    #[getter]
    fn top_dim(&self) -> usize {
        self.inner.top().dim()
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    fn is_subintegral(&self) -> PyResult<bool> {
        is_subintegral(&self.inner).map_err(to_py)
    }

    fn is_infra_integral(&self) -> PyResult<bool> {
        is_infra_integral(&self.inner).map_err(to_py)
    }

    #[pyo3(signature = (node_budget=None))]
    fn is_t_closed(&self, py: Python<'_>, node_budget: Option<usize>) -> PyResult<bool> {
        let b = budget(node_budget);
        py.detach(|| is_t_closed(&self.inner, b.scan_pairs, b.nodes))
            .map(|v| v.t_closed)
            .map_err(to_py)
    }

    /// Number of rings `T` with `R ⊆ T ⊆ S`.
    #[pyo3(signature = (node_budget=None))]
    fn interval_size(&self, py: Python<'_>, node_budget: Option<usize>) -> PyResult<usize> {
        let b = budget(node_budget);
        py.detach(|| enumerate_interval(&self.inner, b.nodes))
            .map(|l| l.len())
            .map_err(to_py)
    }

    #[pyo3(signature = (node_budget=None))]
    fn analyze(&self, py: Python<'_>, node_budget: Option<usize>) -> PyResult<String> {
        let b = budget(node_budget);
        py.detach(|| Analysis::run(&self.inner, &b).and_then(|a| a.document()))
            .map(|d| d.to_json())
            .map_err(to_py)
    }

    /// Hasse diagram of the interval as `"dot"` or `"json"`.
    #[pyo3(signature = (format="json", node_budget=None))]
    fn lattice(
        &self,
        py: Python<'_>,
        format: &str,
        node_budget: Option<usize>,
    ) -> PyResult<String> {
        let b = budget(node_budget);
        let graph = py
            .detach(|| {
                let lat = enumerate_interval(&self.inner, b.nodes)?;
                let kinds = classify_edges(&lat)?;
                Ok(Graph::new(&lat, &kinds))
            })
            .map_err(to_py)?;
        match format {
            "dot" => Ok(graph.to_dot()),
            "json" => Ok(graph.to_json()),
            other => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        }
    }

    #[pyo3(signature = (node_budget=None))]
    fn nagata(&self, py: Python<'_>, node_budget: Option<usize>) -> PyResult<String> {
        let b = budget(node_budget);
        py.detach(|| {
            let lat = enumerate_interval(&self.inner, b.nodes)?;
            nagata_report(&lat, b.nodes)
        })
        .map(|r| pretty(&NagataDocument::of(&r)))
        .map_err(to_py)
    }

    /// Runs every cross-check on this instance; returns the report as JSON.
    #[pyo3(signature = (node_budget=None))]
    fn check(&self, py: Python<'_>, node_budget: Option<usize>) -> PyResult<String> {
        let b = budget(node_budget);
        py.detach(|| check_extension(&self.inner, "python".into(), &b))
            .map(|c| pretty(&c))
            .map_err(to_py)
    }

    /// Whether lattice enumeration agrees with the brute-force subspace walk.
    #[pyo3(signature = (node_budget=None))]
    fn oracle_agrees(&self, py: Python<'_>, node_budget: Option<usize>) -> PyResult<bool> {
        let b = budget(node_budget);
        py.detach(|| {
            let lat = enumerate_interval(&self.inner, b.nodes)?;
            let brute = brute_force_interval(&self.inner, b.oracle_subspaces)?;
            Ok(brute.as_slice() == lat.nodes())
        })
        .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Extension(q={}, base_dim={}, top_dim={})",
            self.field_order(),
            self.base_dim(),
            self.top_dim()
        )
    }
}

/// Seeded random instances as JSON documents.
#[pyfunction]
#[pyo3(signature = (shape, q=2, max_dim=4, count=1, seed=0))]
fn generate(shape: &str, q: u32, max_dim: usize, count: usize, seed: u64) -> PyResult<Vec<String>> {
    let shape = shape.parse().map_err(to_py)?;
    let spec = GenSpec {
        seed,
        q,
        max_dim,
        shape,
        count,
    };
    let stream = random_extension(spec).map_err(to_py)?;
    Ok(stream
        .instances
        .iter()
        .map(|g| InstanceDocument::from_extension(&g.extension).to_json())
        .collect())
}

/// Full analysis of an instance document, as JSON.
#[pyfunction]
#[pyo3(signature = (text, node_budget=None))]
fn analyze(py: Python<'_>, text: &str, node_budget: Option<usize>) -> PyResult<String> {
    Extension::from_json(text)?.analyze(py, node_budget)
}

#[pymodule]
fn ringext(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Extension>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add(
        "InvariantViolation",
        m.py().get_type::<InvariantViolation>(),
    )?;
    Ok(())
}
