//! Comparison of role distances with external word-vector distances.

use serde::{Deserialize, Serialize};

use crate::clustering::RoleDistanceMatrix;
use crate::graph::CategoryId;
use crate::ingest::{CategorySet, EmbeddingTable};
use crate::stats;

const STOP_WORDS: &[&str] = &["and", "or", "of", "the", "a", "an", "in", "to"];

/// How a category name was resolved to a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LookupOutcome {
    Exact,
    Lowercase,
    TokenMean,
}

/// Vector for one category: exact-name lookup, else lowercased name, else
/// the mean of per-token vectors of the name (stop words dropped).
pub fn category_vector(
    name: &str,
    emb: &EmbeddingTable,
) -> Option<(Vec<f64>, LookupOutcome)> {
    if let Some(v) = emb.get(name) {
        return Some((v.to_vec(), LookupOutcome::Exact));
    }
    let lower = name.to_lowercase();
    if let Some(v) = emb.get(&lower) {
        return Some((v.to_vec(), LookupOutcome::Lowercase));
    }
    let mut sum = vec![0.0; emb.dim];
    let mut hits = 0usize;
    for token in lower.split(|c: char| !c.is_alphanumeric()) {
        if token.is_empty() || STOP_WORDS.contains(&token) {
            continue;
        }
        if let Some(v) = emb.get(token) {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
            hits += 1;
        }
    }
    if hits == 0 {
        return None;
    }
    for s in sum.iter_mut() {
        *s /= hits as f64;
    }
    Some((sum, LookupOutcome::TokenMean))
}

pub fn euclidean(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// `1 − x·y/(|x||y|)`, in [0, 2].
pub fn cosine_dissimilarity(x: &[f64], y: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let nx: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny: f64 = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    1.0 - dot / (nx * ny)
}

/// One row per unordered category pair with vectors on both sides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedDistanceSample {
    pub pairs: Vec<(CategoryId, CategoryId)>,
    pub role_distance: Vec<f64>,
    pub euclidean: Vec<f64>,
    pub cosine: Vec<f64>,
    /// Categories with no resolvable vector, excluded from all rows.
    pub excluded: Vec<CategoryId>,
}

pub fn paired_sample(
    dist: &RoleDistanceMatrix,
    categories: &CategorySet,
    emb: &EmbeddingTable,
) -> PairedDistanceSample {
    let mut vectors: Vec<Option<Vec<f64>>> = Vec::with_capacity(categories.len());
    let mut excluded = Vec::new();
    for (id, name) in categories.iter() {
        match category_vector(name, emb) {
            Some((v, _)) => vectors.push(Some(v)),
            None => {
                vectors.push(None);
                excluded.push(id);
            }
        }
    }
    let mut sample = PairedDistanceSample {
        pairs: Vec::new(),
        role_distance: Vec::new(),
        euclidean: Vec::new(),
        cosine: Vec::new(),
        excluded,
    };
    for i in 0..categories.len() {
        for j in (i + 1)..categories.len() {
            if let (Some(vi), Some(vj)) = (&vectors[i], &vectors[j]) {
                sample.pairs.push((CategoryId(i as u32), CategoryId(j as u32)));
                sample.role_distance.push(dist.get(i, j));
                sample.euclidean.push(euclidean(vi, vj));
                sample.cosine.push(cosine_dissimilarity(vi, vj));
            }
        }
    }
    sample
}

/// Correlation / mutual-information report between role distance and the
/// two embedding distances. MI uses equal-frequency binning, natural log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub n_pairs: usize,
    pub excluded: usize,
    pub bins: usize,
    pub log_base: &'static str,
    pub pearson_cos: Option<f64>,
    pub pearson_euc: Option<f64>,
    pub mi_cos: f64,
    pub mi_euc: f64,
}

pub fn compare(sample: &PairedDistanceSample, bins: usize) -> CompareReport {
    assert!(sample.role_distance.len() >= 2, "need at least two pairs");
    assert!(bins >= 2);
    CompareReport {
        n_pairs: sample.role_distance.len(),
        excluded: sample.excluded.len(),
        bins,
        log_base: "e",
        pearson_cos: stats::pearson(&sample.role_distance, &sample.cosine),
        pearson_euc: stats::pearson(&sample.role_distance, &sample.euclidean),
        mi_cos: stats::mutual_information_binned(&sample.role_distance, &sample.cosine, bins),
        mi_euc: stats::mutual_information_binned(&sample.role_distance, &sample.euclidean, bins),
    }
}

/// Default equal-frequency bin count for MI.
pub const DEFAULT_BINS: usize = 32;
