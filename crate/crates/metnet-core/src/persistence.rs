//! Edge-multiplicity distribution versus configuration ensembles: the test
//! for persistent mappings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::DirectedMultigraph;
use crate::null_models::{run_ensemble, NullModel, NullModelError, StdKind};

/// Histogram over edge multiplicities: m → number of ordered connected
/// pairs carrying exactly m parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityDistribution {
    pub counts: BTreeMap<u32, u64>,
}

impl MultiplicityDistribution {
    /// Total edge mass Σ m·count(m); equals the multigraph edge count.
    pub fn edge_mass(&self) -> u64 {
        self.counts
            .iter()
            .map(|(&m, &c)| m as u64 * c)
            .sum()
    }
}

pub fn multiplicity_distribution(g: &DirectedMultigraph) -> MultiplicityDistribution {
    let mut counts = BTreeMap::new();
    for (_, _, m) in g.edges() {
        *counts.entry(m).or_insert(0u64) += 1;
    }
    MultiplicityDistribution { counts }
}

/// One multiplicity bin of the persistence report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceBin {
    pub multiplicity: u32,
    pub data_count: u64,
    pub rand_mean: f64,
    pub rand_std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersistenceReport {
    pub replicates: u32,
    pub seed: u64,
    pub swaps: u64,
    /// Exceedance threshold in ensemble standard deviations.
    pub sigma_threshold: f64,
    pub bins: Vec<PersistenceBin>,
    /// Smallest multiplicity from which the data exceeds mean + t·std in
    /// every occupied bin; `None` when no such sustained exceedance exists.
    pub sustained_exceedance_from: Option<u32>,
}

/// Compares the data multiplicity distribution against the multigraph swap
/// ensemble, which preserves degree sequences but redistributes
/// multiplicities.
pub fn persistence_test(
    g: &DirectedMultigraph,
    replicates: u32,
    swaps: Option<u64>,
    seed: u64,
    sigma_threshold: f64,
) -> Result<PersistenceReport, NullModelError> {
    assert!(replicates >= 2, "need at least two replicates");
    let data = multiplicity_distribution(g);
    let stats = run_ensemble(
        g,
        NullModel::ConfigMulti,
        replicates,
        swaps,
        seed,
        StdKind::Population,
        "multiplicity-distribution",
        |replica| {
            debug_assert_eq!(replica.edge_count(), g.edge_count());
            multiplicity_distribution(replica)
                .counts
                .into_iter()
                .map(|(m, c)| (m as i64, c as f64))
                .collect()
        },
    )?;
    let mut keys: std::collections::BTreeSet<u32> = data.counts.keys().copied().collect();
    keys.extend(stats.domain.iter().map(|&k| k as u32));
    let bins: Vec<PersistenceBin> = keys
        .into_iter()
        .map(|m| {
            let (rand_mean, rand_std) = stats.get(m as i64).unwrap_or((0.0, 0.0));
            PersistenceBin {
                multiplicity: m,
                data_count: data.counts.get(&m).copied().unwrap_or(0),
                rand_mean,
                rand_std,
            }
        })
        .collect();
    // scan occupied data bins from the top for the sustained exceedance onset
    let mut onset = None;
    for bin in bins.iter().rev().filter(|b| b.data_count > 0) {
        if (bin.data_count as f64) > bin.rand_mean + sigma_threshold * bin.rand_std {
            onset = Some(bin.multiplicity);
        } else {
            break;
        }
    }
    Ok(PersistenceReport {
        replicates,
        seed,
        swaps: stats.swaps,
        sigma_threshold,
        bins,
        sustained_exceedance_from: onset,
    })
}

/// Log-binned view of a multiplicity distribution (powers of `base`), for
/// plotting parity with log-scale figures.
pub fn log_binned(dist: &MultiplicityDistribution, base: f64) -> Vec<(u32, u32, u64)> {
    assert!(base > 1.0);
    let mut out: Vec<(u32, u32, u64)> = Vec::new();
    let mut lo = 1u32;
    let max = dist.counts.keys().max().copied().unwrap_or(0);
    while lo <= max {
        let hi = ((lo as f64 * base).ceil() as u32).max(lo + 1) - 1;
        let count = dist
            .counts
            .range(lo..=hi)
            .map(|(_, &c)| c)
            .sum();
        out.push((lo, hi, count));
        lo = hi + 1;
    }
    out
}
