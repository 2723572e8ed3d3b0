//! Derived degree analyses: null-model comparison bands, in-vs-out
//! correlation, and density anti-correlation.

use serde::{Deserialize, Serialize};

use crate::graph::{degrees_multi, CategorySizeTable, DegreeRecord, DirectedMultigraph};
use crate::hist::{degree_histogram, BinSpec, DegreeKind, DegreeMode};
use crate::null_models::{run_ensemble, EnsembleStats, NullModel, NullModelError, StdKind};
use crate::stats;

/// Data degree histogram with ensemble mean ± std per bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullBandReport {
    pub which: DegreeKind,
    pub stats: EnsembleStats,
    /// (bin lower edge, data count) aligned with the ensemble domain.
    pub data: Vec<(u64, u64)>,
    /// Bins where the data exceeds mean + 3·std.
    pub exceedance_bins: Vec<u64>,
}

/// Compares the degree distribution of `g` against a null ensemble.
#[allow(clippy::too_many_arguments)]
pub fn degree_nullband(
    g: &DirectedMultigraph,
    sizes: &CategorySizeTable,
    which: DegreeKind,
    model: NullModel,
    replicates: u32,
    swaps: Option<u64>,
    seed: u64,
    spec: BinSpec,
) -> Result<NullBandReport, NullModelError> {
    let metric = move |h: &DirectedMultigraph| {
        let degs = match which {
            DegreeKind::In => h.in_degrees(),
            DegreeKind::Out => h.out_degrees(),
        };
        let hist = crate::hist::Histogram::from_values(degs, spec);
        hist.counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(b, &c)| (b as i64, c as f64))
            .collect()
    };
    let stats = run_ensemble(
        g,
        model,
        replicates,
        swaps,
        seed,
        StdKind::Population,
        &format!("degree-histogram-{which:?}"),
        metric,
    )?;
    let records = degrees_multi(g, sizes).map_err(|e| NullModelError::MetricFailed {
        replicate: 0,
        message: e.to_string(),
    })?;
    let data_hist = degree_histogram(&records, which, DegreeMode::Count, spec);
    let mut domain: std::collections::BTreeSet<u64> = stats.domain.iter().map(|&b| b as u64).collect();
    domain.extend(
        data_hist
            .counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(b, _)| b as u64),
    );
    let data: Vec<(u64, u64)> = domain
        .iter()
        .map(|&b| {
            (
                spec.lower_edge(b),
                data_hist.counts.get(b as usize).copied().unwrap_or(0),
            )
        })
        .collect();
    let exceedance_bins = domain
        .iter()
        .filter(|&&b| {
            let count = data_hist.counts.get(b as usize).copied().unwrap_or(0) as f64;
            let (m, s) = stats.get(b as i64).unwrap_or((0.0, 0.0));
            count > m + 3.0 * s
        })
        .map(|&b| spec.lower_edge(b))
        .collect();
    Ok(NullBandReport {
        which,
        stats,
        data,
        exceedance_bins,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterReport {
    /// Pearson correlation of in vs out degree over all vertices.
    pub overall: Option<f64>,
    /// Same over the subset with out-degree above the threshold.
    pub high_out_subset: Option<f64>,
    pub threshold: u64,
    pub subset_size: usize,
    /// (category index, out_degree, in_degree) rows for plotting.
    pub points: Vec<(u32, u64, u64)>,
}

/// In-vs-out degree correlations, full population and high-out-degree subset.
pub fn degree_scatter_stats(records: &[DegreeRecord], threshold: u64) -> ScatterReport {
    let ins: Vec<f64> = records.iter().map(|r| r.in_degree as f64).collect();
    let outs: Vec<f64> = records.iter().map(|r| r.out_degree as f64).collect();
    let subset: Vec<&DegreeRecord> = records.iter().filter(|r| r.out_degree > threshold).collect();
    let sub_ins: Vec<f64> = subset.iter().map(|r| r.in_degree as f64).collect();
    let sub_outs: Vec<f64> = subset.iter().map(|r| r.out_degree as f64).collect();
    ScatterReport {
        overall: stats::pearson(&ins, &outs),
        high_out_subset: stats::pearson(&sub_ins, &sub_outs),
        threshold,
        subset_size: subset.len(),
        points: records
            .iter()
            .map(|r| (r.category.0, r.out_degree, r.in_degree))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    /// Pearson correlation of in- vs out-density over the high-density subset.
    pub correlation: Option<f64>,
    pub frac: f64,
    pub subset_size: usize,
    /// Subset members whose in- AND out-density both clear the cut
    /// (the both-high outliers).
    pub both_high: Vec<u32>,
}

/// Correlation over categories with in- or out-density above `frac` of the
/// respective maximum.
pub fn density_anticorrelation(records: &[DegreeRecord], frac: f64) -> DensityReport {
    assert!(frac > 0.0 && frac <= 1.0);
    let max_in = records.iter().map(|r| r.in_density).fold(0.0, f64::max);
    let max_out = records.iter().map(|r| r.out_density).fold(0.0, f64::max);
    let subset: Vec<&DegreeRecord> = records
        .iter()
        .filter(|r| r.in_density > frac * max_in || r.out_density > frac * max_out)
        .collect();
    let ins: Vec<f64> = subset.iter().map(|r| r.in_density).collect();
    let outs: Vec<f64> = subset.iter().map(|r| r.out_density).collect();
    DensityReport {
        correlation: stats::pearson(&ins, &outs),
        frac,
        subset_size: subset.len(),
        both_high: subset
            .iter()
            .filter(|r| r.in_density > frac * max_in && r.out_density > frac * max_out)
            .map(|r| r.category.0)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CategoryId;

    fn rec(c: u32, ind: u64, outd: u64, size: u32) -> DegreeRecord {
        DegreeRecord {
            category: CategoryId(c),
            in_degree: ind,
            out_degree: outd,
            size,
            in_density: ind as f64 / size as f64,
            out_density: outd as f64 / size as f64,
        }
    }

    #[test]
    fn perfectly_correlated_degrees() {
        let records: Vec<_> = (0..10).map(|i| rec(i, i as u64, i as u64, 1)).collect();
        let r = degree_scatter_stats(&records, 4);
        assert!((r.overall.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.high_out_subset.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn small_subset_flagged_undefined() {
        let records = vec![rec(0, 1, 2, 1), rec(1, 3, 1, 1)];
        let r = degree_scatter_stats(&records, 10);
        assert_eq!(r.subset_size, 0);
        assert!(r.high_out_subset.is_none());
    }

    #[test]
    fn exact_density_tradeoff_gives_minus_one() {
        let records: Vec<_> = (0..8)
            .map(|i| rec(i, 10 + i as u64, 18 - i as u64, 1))
            .collect();
        let r = density_anticorrelation(&records, 0.5);
        assert!((r.correlation.unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn equal_densities_flagged() {
        let records: Vec<_> = (0..5).map(|i| rec(i, 4, 4, 1)).collect();
        let r = density_anticorrelation(&records, 0.5);
        assert!(r.correlation.is_none());
        assert_eq!(r.both_high.len(), 5);
    }

    #[test]
    fn threshold_does_not_change_overall() {
        let records: Vec<_> = (0..20)
            .map(|i| rec(i, (i * 7 % 13) as u64, (i * 3 % 11) as u64, 1))
            .collect();
        let a = degree_scatter_stats(&records, 2);
        let b = degree_scatter_stats(&records, 8);
        assert_eq!(a.overall, b.overall);
    }

    #[test]
    fn regular_graph_within_degenerate_bands() {
        // directed cycle: swap ensemble preserves the degree sequence, so
        // every replicate has the same histogram as the data
        let n = 12u32;
        let g = crate::graph::DirectedGraph::from_edges(
            n,
            (0..n).map(|i| (CategoryId(i), CategoryId((i + 1) % n))),
        )
        .unwrap()
        .to_multigraph();
        let sizes = CategorySizeTable::new(vec![1; n as usize]);
        let band = degree_nullband(
            &g,
            &sizes,
            DegreeKind::In,
            NullModel::ConfigSimple,
            10,
            None,
            3,
            BinSpec::Unit,
        )
        .unwrap();
        assert!(band.exceedance_bins.is_empty());
        let (m, s) = band.stats.get(1).unwrap();
        assert_eq!((m, s), (n as f64, 0.0));
    }
}
