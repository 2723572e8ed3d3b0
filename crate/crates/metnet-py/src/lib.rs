//! Python bindings for the metnet analysis library.
//!
//! The `Corpus` class wraps an ingested corpus together with its directed
//! multigraph; analysis methods return plain Python lists/dicts mirroring
//! the CLI's JSON output so results drop straight into pandas or json.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use metnet_core::clustering::{cluster_stability, role_distance, ward_hca_all};
use metnet_core::curvature::ollivier_all;
use metnet_core::graph::{degrees_multi, degrees_simple, CategoryId, DirectedMultigraph};
use metnet_core::ingest::{derive_category_sizes, parse_corpus, SelfLoopPolicy};
use metnet_core::motifs::{motif_significance, outward_transitivity, ClosureRule};
use metnet_core::persistence::persistence_test;
use metnet_core::transport::{w1 as w1_exact, TransportProblem};

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.unbind().into()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.unbind().into()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.unbind().into(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.unbind().into()
        }
    })
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

/// Ingested metaphor corpus plus its directed multigraph.
#[pyclass]
struct Corpus {
    corpus: metnet_core::ingest::Corpus,
    multi: DirectedMultigraph,
}

#[pymethods]
impl Corpus {
    /// Parse a corpus CSV (`word,source,target,first_year,last_year`).
    #[staticmethod]
    #[pyo3(signature = (path, skip_self_loops=false))]
    fn from_csv(path: &str, skip_self_loops: bool) -> PyResult<Self> {
        let file = std::fs::File::open(path)
            .map_err(|e| PyValueError::new_err(format!("cannot open {path}: {e}")))?;
        let policy = if skip_self_loops {
            SelfLoopPolicy::SkipAndCount
        } else {
            SelfLoopPolicy::Reject
        };
        let corpus =
            parse_corpus(file, policy).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let multi =
            DirectedMultigraph::from_records(corpus.categories.len() as u32, &corpus.records);
        Ok(Corpus { corpus, multi })
    }

    #[getter]
    fn n_categories(&self) -> usize {
        self.corpus.categories.len()
    }

    #[getter]
    fn n_records(&self) -> usize {
        self.corpus.records.len()
    }

    #[getter]
    fn n_edges(&self) -> u64 {
        self.multi.edge_count()
    }

    fn category_names(&self) -> Vec<String> {
        (0..self.corpus.categories.len() as u32)
            .map(|i| self.corpus.categories.name(CategoryId(i)).to_string())
            .collect()
    }

    /// Multigraph edges as `(source, target, multiplicity)` triples.
    fn edges(&self) -> Vec<(String, String, u32)> {
        self.multi
            .edges()
            .map(|(u, v, m)| {
                (
                    self.corpus.categories.name(u).to_string(),
                    self.corpus.categories.name(v).to_string(),
                    m,
                )
            })
            .collect()
    }

    /// Per-category degree rows; `simple=True` collapses parallel edges.
    #[pyo3(signature = (simple=false))]
    fn degrees(&self, py: Python<'_>, simple: bool) -> PyResult<Py<PyAny>> {
        let sizes = derive_category_sizes(&self.corpus);
        let records = if simple {
            degrees_simple(&self.multi.project_simple(), &sizes)
        } else {
            degrees_multi(&self.multi, &sizes)
        }
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        to_py(py, &records)
    }

    /// Motif census Z-scores at the given subgraph size (2 or 3).
    #[pyo3(signature = (size, replicates=1000, swaps=None, seed=0))]
    fn motifs(
        &self,
        py: Python<'_>,
        size: u8,
        replicates: u32,
        swaps: Option<u64>,
        seed: u64,
    ) -> PyResult<Py<PyAny>> {
        let report = motif_significance(&self.multi.project_simple(), size, replicates, swaps, seed)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_py(py, &report)
    }

    /// Outward transitivity per category.
    #[pyo3(signature = (outward_closure=false))]
    fn transitivity(&self, py: Python<'_>, outward_closure: bool) -> PyResult<Py<PyAny>> {
        let rule = if outward_closure {
            ClosureRule::Outward
        } else {
            ClosureRule::Inward
        };
        let mut rows = Vec::new();
        for r in outward_transitivity(&self.multi.project_simple(), rule) {
            rows.push(serde_json::json!({
                "category": self.corpus.categories.name(r.vertex),
                "paths": r.path_count,
                "closed": r.closed_count,
                "transitivity": r.transitivity,
            }));
        }
        json_to_py(py, &serde_json::Value::Array(rows))
    }

    /// Edge-multiplicity distribution against the configuration ensemble.
    #[pyo3(signature = (replicates=1000, swaps=None, seed=0, sigma=2.0))]
    fn persistence(
        &self,
        py: Python<'_>,
        replicates: u32,
        swaps: Option<u64>,
        seed: u64,
        sigma: f64,
    ) -> PyResult<Py<PyAny>> {
        let report = persistence_test(&self.multi, replicates, swaps, seed, sigma)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        to_py(py, &report)
    }

    /// Structural role-distance matrix as a nested list.
    fn role_distance(&self) -> Vec<Vec<f64>> {
        let dist = role_distance(&self.multi.project_simple());
        let n = self.corpus.categories.len();
        (0..n)
            .map(|i| (0..n).map(|j| dist.get(i, j)).collect())
            .collect()
    }

    /// Enumerate Ward dendrograms over role distances; returns a dict with
    /// newick strings, truncation flag, and cluster stability rows.
    #[pyo3(signature = (cap=10_000, tie_epsilon=1e-12))]
    fn cluster(&self, py: Python<'_>, cap: usize, tie_epsilon: f64) -> PyResult<Py<PyAny>> {
        let dist = role_distance(&self.multi.project_simple());
        let ds = ward_hca_all(&dist, cap, tie_epsilon)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        let newicks: Vec<String> = ds
            .dendrograms
            .iter()
            .map(|d| {
                d.to_newick(|i| {
                    self.corpus
                        .categories
                        .name(CategoryId(i as u32))
                        .replace([' ', ',', '(', ')', ':', ';'], "_")
                })
            })
            .collect();
        let stability = cluster_stability(&ds);
        json_to_py(
            py,
            &serde_json::json!({
                "n_dendrograms": ds.dendrograms.len(),
                "truncated": ds.truncated,
                "newick": newicks,
                "stability": stability,
            }),
        )
    }

    /// Forman and Ollivier curvature per connected category pair.
    fn curvature(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let mut rows = Vec::new();
        for r in ollivier_all(&self.multi) {
            rows.push(serde_json::json!({
                "source": self.corpus.categories.name(r.source),
                "target": self.corpus.categories.name(r.target),
                "multiplicity": r.multiplicity,
                "forman": r.forman,
                "ollivier": r.ollivier,
                "flag": r.ollivier_flag.as_str(),
            }));
        }
        json_to_py(py, &serde_json::Value::Array(rows))
    }
}

/// Exact Wasserstein-1 between two weighted point sets; `costs[i][j]` may be
/// None for unreachable pairs.
#[pyfunction]
fn w1(supplies: Vec<u64>, demands: Vec<u64>, costs: Vec<Vec<Option<u64>>>) -> PyResult<f64> {
    let tp = TransportProblem {
        supplies,
        demands,
        costs,
    };
    w1_exact(&tp).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Pearson correlation; None when undefined.
#[pyfunction]
fn pearson(x: Vec<f64>, y: Vec<f64>) -> Option<f64> {
    metnet_core::stats::pearson(&x, &y)
}

/// Mutual information of two real columns under equal-frequency binning
/// (natural log).
#[pyfunction]
fn mutual_information(x: Vec<f64>, y: Vec<f64>, bins: usize) -> f64 {
    metnet_core::stats::mutual_information_binned(&x, &y, bins)
}

#[pymodule]
fn metnet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Corpus>()?;
    m.add_function(wrap_pyfunction!(w1, m)?)?;
    m.add_function(wrap_pyfunction!(pearson, m)?)?;
    m.add_function(wrap_pyfunction!(mutual_information, m)?)?;
    Ok(())
}
