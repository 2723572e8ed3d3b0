//! Integer-valued histograms for degree and multiplicity distributions.

use serde::{Deserialize, Serialize};

use crate::graph::DegreeRecord;

/// Binning scheme over non-negative integer values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BinSpec {
    /// One bin per integer value, 0..=max.
    Unit,
    /// Fixed-width bins `[i*w, (i+1)*w)`.
    Width(u64),
}

impl BinSpec {
    pub fn bin_of(self, value: u64) -> u64 {
        match self {
            BinSpec::Unit => value,
            BinSpec::Width(w) => value / w.max(1),
        }
    }

    /// Lower edge of a bin index.
    pub fn lower_edge(self, bin: u64) -> u64 {
        match self {
            BinSpec::Unit => bin,
            BinSpec::Width(w) => bin * w.max(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub spec: BinSpec,
    /// Counts indexed by bin, up to the last occupied bin.
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn from_values(values: impl IntoIterator<Item = u64>, spec: BinSpec) -> Self {
        let mut counts = Vec::new();
        for v in values {
            let b = spec.bin_of(v) as usize;
            if counts.len() <= b {
                counts.resize(b + 1, 0);
            }
            counts[b] += 1;
        }
        if counts.is_empty() {
            counts.push(0);
        }
        Histogram { spec, counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts as f64, padded with zeros to `len` bins.
    pub fn padded(&self, len: usize) -> Vec<f64> {
        let mut v: Vec<f64> = self.counts.iter().map(|&c| c as f64).collect();
        v.resize(v.len().max(len), 0.0);
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegreeKind {
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegreeMode {
    Count,
    Density,
}

/// Histogram of in- or out-degrees (or densities, floored to integers for
/// binning) over a degree report. Total mass equals the vertex count.
pub fn degree_histogram(
    records: &[DegreeRecord],
    which: DegreeKind,
    mode: DegreeMode,
    spec: BinSpec,
) -> Histogram {
    let values = records.iter().map(|r| match (which, mode) {
        (DegreeKind::In, DegreeMode::Count) => r.in_degree,
        (DegreeKind::Out, DegreeMode::Count) => r.out_degree,
        (DegreeKind::In, DegreeMode::Density) => r.in_density.floor() as u64,
        (DegreeKind::Out, DegreeMode::Density) => r.out_density.floor() as u64,
    });
    Histogram::from_values(values, spec)
}
