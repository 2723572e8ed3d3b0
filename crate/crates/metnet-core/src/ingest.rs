//! Corpus, category-size, and embedding-file parsing.
//!
//! The canonical corpus format is CSV with header
//! `word,source,target,first_year,last_year`; empty year fields mean
//! unknown / still current. Category names are interned to dense ids in
//! first-appearance order, so ingestion is a pure function of row order.

use std::collections::HashMap;
use std::io::{Read, Write};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CategoryId, CategorySizeTable};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error("line {line}: self-loop on category '{name}'")]
    SelfLoop { line: u64, name: String },
    #[error("line {line}: non-positive size {size} for category '{name}'")]
    NonPositiveSize { line: u64, name: String, size: i64 },
    #[error("categories missing from size table: {0:?}")]
    MissingSizes(Vec<String>),
    #[error("line {line}: expected {expected} vector components, found {found}")]
    DimensionMismatch {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: non-finite vector component")]
    NonFiniteComponent { line: u64 },
    #[error("line {line}: zero vector for key '{key}'")]
    ZeroVector { line: u64, key: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// One etymologically attested word transfer between two categories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaphorRecord {
    pub word: String,
    pub source: CategoryId,
    pub target: CategoryId,
    pub first_year: Option<i32>,
    pub last_year: Option<i32>,
}

/// How to treat rows whose source and target category coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelfLoopPolicy {
    /// Fail the whole parse on the first self-loop row.
    #[default]
    Reject,
    /// Drop self-loop rows and count them.
    SkipAndCount,
}

/// Interner mapping category names to dense ids in first-appearance order.
/// Uniqueness is decided on the whitespace-normalized, case-folded name;
/// the first spelling seen is kept for display.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySet {
    names: Vec<String>,
    index: IndexMap<String, u32>,
}

fn normalize_name(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

impl CategorySet {
    pub fn intern(&mut self, raw: &str) -> CategoryId {
        let key = normalize_name(raw);
        if let Some(&id) = self.index.get(&key) {
            return CategoryId(id);
        }
        let id = self.names.len() as u32;
        self.names.push(raw.trim().to_string());
        self.index.insert(key, id);
        CategoryId(id)
    }

    pub fn lookup(&self, raw: &str) -> Option<CategoryId> {
        self.index.get(&normalize_name(raw)).map(|&i| CategoryId(i))
    }

    pub fn name(&self, id: CategoryId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (CategoryId, &str)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (CategoryId(i as u32), n.as_str()))
    }
}

/// A parsed corpus: records in row order plus the interned category set
/// and parse diagnostics.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub records: Vec<MetaphorRecord>,
    pub categories: CategorySet,
    /// Rows dropped under [`SelfLoopPolicy::SkipAndCount`].
    pub skipped_self_loops: u64,
    /// Rows identical to an earlier row (kept; they denote distinct attestations).
    pub duplicate_rows: u64,
}

fn parse_year(field: &str, line: u64, which: &str) -> Result<Option<i32>, IngestError> {
    let t = field.trim();
    if t.is_empty() {
        return Ok(None);
    }
    t.parse::<i32>()
        .map(Some)
        .map_err(|_| IngestError::MalformedRow {
            line,
            reason: format!("{which} '{t}' is not an integer"),
        })
}

/// Parses the canonical CSV corpus.
pub fn parse_corpus<R: Read>(reader: R, policy: SelfLoopPolicy) -> Result<Corpus, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);
    let mut corpus = Corpus::default();
    let mut seen: HashMap<(String, CategoryId, CategoryId, Option<i32>, Option<i32>), u64> =
        HashMap::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i as u64 + 2; // header is line 1
        let row = row?;
        if row.len() != 5 {
            return Err(IngestError::MalformedRow {
                line,
                reason: format!("expected 5 fields, found {}", row.len()),
            });
        }
        let word = row[0].trim().to_string();
        if word.is_empty() {
            return Err(IngestError::MalformedRow {
                line,
                reason: "empty word field".into(),
            });
        }
        let source_raw = row[1].trim();
        let target_raw = row[2].trim();
        if source_raw.is_empty() || target_raw.is_empty() {
            return Err(IngestError::MalformedRow {
                line,
                reason: "empty category field".into(),
            });
        }
        if normalize_name(source_raw) == normalize_name(target_raw) {
            match policy {
                SelfLoopPolicy::Reject => {
                    return Err(IngestError::SelfLoop {
                        line,
                        name: source_raw.to_string(),
                    })
                }
                SelfLoopPolicy::SkipAndCount => {
                    corpus.skipped_self_loops += 1;
                    continue;
                }
            }
        }
        let source = corpus.categories.intern(source_raw);
        let target = corpus.categories.intern(target_raw);
        let first_year = parse_year(&row[3], line, "first_year")?;
        let last_year = parse_year(&row[4], line, "last_year")?;
        if let (Some(f), Some(l)) = (first_year, last_year) {
            if f > l {
                return Err(IngestError::MalformedRow {
                    line,
                    reason: format!("first_year {f} > last_year {l}"),
                });
            }
        }
        let key = (word.clone(), source, target, first_year, last_year);
        let count = seen.entry(key).or_insert(0);
        if *count > 0 {
            corpus.duplicate_rows += 1;
        }
        *count += 1;
        corpus.records.push(MetaphorRecord {
            word,
            source,
            target,
            first_year,
            last_year,
        });
    }
    Ok(corpus)
}

/// Writes records back in the canonical CSV shape.
pub fn write_corpus<W: Write>(
    w: W,
    records: &[MetaphorRecord],
    categories: &CategorySet,
) -> Result<(), IngestError> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["word", "source", "target", "first_year", "last_year"])?;
    for r in records {
        let fy = r.first_year.map(|y| y.to_string()).unwrap_or_default();
        let ly = r.last_year.map(|y| y.to_string()).unwrap_or_default();
        wtr.write_record([
            r.word.as_str(),
            categories.name(r.source),
            categories.name(r.target),
            &fy,
            &ly,
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Parses an explicit `name,size` table. Every category of the corpus must
/// be covered; sizes must be positive.
pub fn parse_category_sizes<R: Read>(
    reader: R,
    categories: &CategorySet,
) -> Result<CategorySizeTable, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(reader);
    let mut sizes = vec![0u32; categories.len()];
    for (i, row) in rdr.records().enumerate() {
        let line = i as u64 + 1;
        let row = row?;
        if row.len() != 2 {
            return Err(IngestError::MalformedRow {
                line,
                reason: format!("expected 2 fields, found {}", row.len()),
            });
        }
        let name = row[0].trim();
        let size: i64 = row[1]
            .trim()
            .parse()
            .map_err(|_| IngestError::MalformedRow {
                line,
                reason: format!("size '{}' is not an integer", &row[1]),
            })?;
        if size <= 0 {
            return Err(IngestError::NonPositiveSize {
                line,
                name: name.to_string(),
                size,
            });
        }
        // sizes for categories absent from the corpus are ignored
        if let Some(id) = categories.lookup(name) {
            sizes[id.index()] = size as u32;
        }
    }
    let missing: Vec<String> = categories
        .iter()
        .filter(|(id, _)| sizes[id.index()] == 0)
        .map(|(_, n)| n.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(IngestError::MissingSizes(missing));
    }
    Ok(CategorySizeTable::new(sizes))
}

/// Fallback size table when no explicit table is given: the number of
/// distinct words attested in each category (as source or target) across
/// the corpus.
pub fn derive_category_sizes(corpus: &Corpus) -> CategorySizeTable {
    let mut words: Vec<std::collections::BTreeSet<&str>> =
        vec![Default::default(); corpus.categories.len()];
    for r in &corpus.records {
        words[r.source.index()].insert(&r.word);
        words[r.target.index()].insert(&r.word);
    }
    CategorySizeTable::new(words.iter().map(|s| s.len().max(1) as u32).collect())
}

/// Word-vector table with a uniform dimension.
#[derive(Debug, Clone, Default)]
pub struct EmbeddingTable {
    pub dim: usize,
    vectors: HashMap<String, Vec<f64>>,
    /// Keys that appeared more than once (last occurrence wins).
    pub duplicate_keys: u64,
}

impl EmbeddingTable {
    pub fn get(&self, key: &str) -> Option<&[f64]> {
        self.vectors.get(key).map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Parses a whitespace-delimited embedding file, one `key v1 .. vD` per line.
pub fn parse_embeddings<R: Read>(
    reader: R,
    expected_dim: usize,
) -> Result<EmbeddingTable, IngestError> {
    let mut text = String::new();
    let mut reader = reader;
    reader.read_to_string(&mut text)?;
    let mut table = EmbeddingTable {
        dim: expected_dim,
        ..Default::default()
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i as u64 + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let mut it = raw.split_whitespace();
        let key = it.next().unwrap().to_string();
        let comps: Vec<&str> = it.collect();
        if comps.len() != expected_dim {
            return Err(IngestError::DimensionMismatch {
                line,
                expected: expected_dim,
                found: comps.len(),
            });
        }
        let mut vec = Vec::with_capacity(expected_dim);
        for c in comps {
            let v: f64 = c.parse().map_err(|_| IngestError::MalformedRow {
                line,
                reason: format!("component '{c}' is not a number"),
            })?;
            if !v.is_finite() {
                return Err(IngestError::NonFiniteComponent { line });
            }
            vec.push(v);
        }
        if vec.iter().all(|&v| v == 0.0) {
            return Err(IngestError::ZeroVector { line, key });
        }
        if table.vectors.insert(key, vec).is_some() {
            table.duplicate_keys += 1;
        }
    }
    Ok(table)
}
