//! Erdős–Rényi and configuration-model null graphs, plus seeded ensembles.
//!
//! Replicate RNG streams are derived from the master seed by a counter
//! scheme: replicate `i` runs on a ChaCha12 generator seeded with the
//! master seed and set to stream `i`. Results are therefore bit-identical
//! for a fixed `(inputs, seed)` regardless of evaluation order.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CategoryId, DirectedGraph, DirectedMultigraph};

#[derive(Debug, Error)]
pub enum NullModelError {
    #[error("edge count {requested} out of range for {n} vertices (max {max})")]
    EdgeCountOutOfRange { requested: u64, n: u32, max: u64 },
    #[error("metric failed on replicate {replicate}: {message}")]
    MetricFailed { replicate: u32, message: String },
}

/// Swap-chain configuration. `swaps` counts attempts, not accepted moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapConfig {
    pub swaps: u64,
    pub seed: u64,
}

/// Default chain length: 10 attempted swaps per edge.
pub fn default_swaps(edge_count: u64) -> u64 {
    10 * edge_count
}

pub fn replicate_rng(master_seed: u64, replicate: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(replicate);
    rng
}

/// Uniform directed graph with exactly `edge_count` distinct non-loop edges,
/// drawn by rejection from the n(n−1) ordered-pair space.
pub fn sample_er(n: u32, edge_count: u64, seed: u64) -> Result<DirectedGraph, NullModelError> {
    sample_er_with_rng(n, edge_count, &mut ChaCha12Rng::seed_from_u64(seed))
}

pub fn sample_er_with_rng<R: Rng>(
    n: u32,
    edge_count: u64,
    rng: &mut R,
) -> Result<DirectedGraph, NullModelError> {
    let max = n as u64 * (n as u64).saturating_sub(1);
    if edge_count > max {
        return Err(NullModelError::EdgeCountOutOfRange {
            requested: edge_count,
            n,
            max,
        });
    }
    let mut edges = std::collections::BTreeSet::new();
    while (edges.len() as u64) < edge_count {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((CategoryId(u), CategoryId(v)));
        }
    }
    Ok(DirectedGraph::from_edges(n, edges).expect("no self-loops by construction"))
}

/// Core swap chain over an explicit edge list. `forbid_parallel` gives the
/// simple-graph variant: a swap is rejected when one of the replacement
/// edges already exists. Self-loops are always rejected. Degree sequences
/// are preserved exactly in both variants.
fn swap_chain<R: Rng>(
    edges: &mut [(CategoryId, CategoryId)],
    attempts: u64,
    forbid_parallel: bool,
    rng: &mut R,
) {
    let n_edges = edges.len();
    if n_edges < 2 {
        return;
    }
    let mut counts: HashMap<(CategoryId, CategoryId), u32> = HashMap::new();
    if forbid_parallel {
        for &e in edges.iter() {
            *counts.entry(e).or_insert(0) += 1;
        }
    }
    for _ in 0..attempts {
        let i = rng.gen_range(0..n_edges);
        let j = rng.gen_range(0..n_edges);
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        let new1 = (a, d);
        let new2 = (c, b);
        if a == d || c == b {
            continue;
        }
        if forbid_parallel {
            // check against the multiset with the two picked edges removed
            let exists = |e: (CategoryId, CategoryId)| {
                let mut m = counts.get(&e).copied().unwrap_or(0);
                if e == (a, b) {
                    m -= 1;
                }
                if e == (c, d) {
                    m -= 1;
                }
                m > 0
            };
            if exists(new1) || exists(new2) || new1 == new2 {
                continue;
            }
            *counts.get_mut(&(a, b)).unwrap() -= 1;
            *counts.get_mut(&(c, d)).unwrap() -= 1;
            *counts.entry(new1).or_insert(0) += 1;
            *counts.entry(new2).or_insert(0) += 1;
        }
        edges[i] = new1;
        edges[j] = new2;
    }
}

/// Degree-preserving randomization of a multigraph (parallel edges allowed).
pub fn swap_randomize_multi(g: &DirectedMultigraph, cfg: SwapConfig) -> DirectedMultigraph {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    swap_randomize_multi_with_rng(g, cfg.swaps, &mut rng)
}

pub fn swap_randomize_multi_with_rng<R: Rng>(
    g: &DirectedMultigraph,
    attempts: u64,
    rng: &mut R,
) -> DirectedMultigraph {
    let mut edges = g.edge_list();
    swap_chain(&mut edges, attempts, false, rng);
    DirectedMultigraph::from_edge_counts(
        g.vertex_count(),
        edges.into_iter().map(|e| (e, 1)),
    )
    .expect("swap chain never introduces self-loops")
}

/// Degree-preserving randomization of a simple graph: swaps that would
/// create a parallel edge or self-loop are rejected.
pub fn swap_randomize_simple(g: &DirectedGraph, cfg: SwapConfig) -> DirectedGraph {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    swap_randomize_simple_with_rng(g, cfg.swaps, &mut rng)
}

pub fn swap_randomize_simple_with_rng<R: Rng>(
    g: &DirectedGraph,
    attempts: u64,
    rng: &mut R,
) -> DirectedGraph {
    let mut edges: Vec<_> = g.edges().collect();
    swap_chain(&mut edges, attempts, true, rng);
    DirectedGraph::from_edges(g.vertex_count(), edges)
        .expect("swap chain never introduces self-loops")
}

/// Null-model family used by an ensemble run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NullModel {
    /// Erdős–Rényi with the template's vertex and (simple) edge count.
    Er,
    /// Degree-preserving swaps on the simple projection, parallels forbidden.
    ConfigSimple,
    /// Degree-preserving swaps on the multigraph edge list.
    ConfigMulti,
}

impl NullModel {
    pub fn as_str(self) -> &'static str {
        match self {
            NullModel::Er => "er",
            NullModel::ConfigSimple => "config-simple",
            NullModel::ConfigMulti => "config-multi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum StdKind {
    #[default]
    Population,
    Sample,
}

/// Per-key mean and standard deviation of a metric over null replicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub metric: String,
    pub model: NullModel,
    pub replicates: u32,
    pub seed: u64,
    pub swaps: u64,
    pub std_kind: StdKind,
    /// Metric domain (bin index, multiplicity, class code, ...), sorted.
    pub domain: Vec<i64>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl EnsembleStats {
    pub fn get(&self, key: i64) -> Option<(f64, f64)> {
        self.domain
            .binary_search(&key)
            .ok()
            .map(|i| (self.mean[i], self.std[i]))
    }
}

/// Runs `replicates` independently seeded null-model draws of `template`
/// and aggregates a keyed metric. Keys absent from a replicate count as 0.
pub fn run_ensemble<F>(
    template: &DirectedMultigraph,
    model: NullModel,
    replicates: u32,
    swaps: Option<u64>,
    seed: u64,
    std_kind: StdKind,
    metric_name: &str,
    metric: F,
) -> Result<EnsembleStats, NullModelError>
where
    F: Fn(&DirectedMultigraph) -> BTreeMap<i64, f64>,
{
    assert!(replicates >= 1, "need at least one replicate");
    let simple = template.project_simple();
    let swaps = swaps.unwrap_or_else(|| {
        default_swaps(match model {
            NullModel::ConfigMulti => template.edge_count(),
            _ => simple.edge_count(),
        })
    });
    let mut samples: Vec<BTreeMap<i64, f64>> = Vec::with_capacity(replicates as usize);
    for rep in 0..replicates {
        let mut rng = replicate_rng(seed, rep as u64);
        let replica = match model {
            NullModel::Er => sample_er_with_rng(simple.vertex_count(), simple.edge_count(), &mut rng)?
                .to_multigraph(),
            NullModel::ConfigSimple => {
                swap_randomize_simple_with_rng(&simple, swaps, &mut rng).to_multigraph()
            }
            NullModel::ConfigMulti => swap_randomize_multi_with_rng(template, swaps, &mut rng),
        };
        samples.push(metric(&replica));
    }
    let mut domain: Vec<i64> = samples
        .iter()
        .flat_map(|m| m.keys().copied())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    if domain.is_empty() {
        domain = Vec::new();
    }
    let mut mean = Vec::with_capacity(domain.len());
    let mut std = Vec::with_capacity(domain.len());
    for &key in &domain {
        let vals: Vec<f64> = samples
            .iter()
            .map(|m| m.get(&key).copied().unwrap_or(0.0))
            .collect();
        let (m, s_pop) = crate::stats::mean_std(&vals);
        mean.push(m);
        std.push(match std_kind {
            StdKind::Population => s_pop,
            StdKind::Sample => crate::stats::sample_std(&vals),
        });
    }
    Ok(EnsembleStats {
        metric: metric_name.to_string(),
        model,
        replicates,
        seed,
        swaps,
        std_kind,
        domain,
        mean,
        std,
    })
}
