//! Directed graph and multigraph representations of the category network.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::MetaphorRecord;

/// Compact handle for a thematic category. Ids are dense `0..n` in
/// first-appearance order of the corpus.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
pub struct CategoryId(pub u32);

impl CategoryId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for CategoryId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("category {0} has no size entry")]
    MissingSize(CategoryId),
    #[error("self-loop ({0},{0}) is not representable")]
    SelfLoop(CategoryId),
}

/// Directed multigraph: parallel edges are kept as integer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedMultigraph {
    n: u32,
    edges: BTreeMap<(CategoryId, CategoryId), u32>,
    /// Words attested along each connected pair, when built from a corpus.
    words: Option<BTreeMap<(CategoryId, CategoryId), Vec<String>>>,
}

impl DirectedMultigraph {
    pub fn new(n: u32) -> Self {
        DirectedMultigraph {
            n,
            edges: BTreeMap::new(),
            words: None,
        }
    }

    /// Builds the multigraph of a record list: the multiplicity of `(u,v)`
    /// is the number of records transferring a word from `u` to `v`.
    pub fn from_records(n: u32, records: &[MetaphorRecord]) -> Self {
        let mut edges = BTreeMap::new();
        let mut words: BTreeMap<_, Vec<String>> = BTreeMap::new();
        for r in records {
            *edges.entry((r.source, r.target)).or_insert(0) += 1;
            words
                .entry((r.source, r.target))
                .or_default()
                .push(r.word.clone());
        }
        DirectedMultigraph {
            n,
            edges,
            words: Some(words),
        }
    }

    pub fn from_edge_counts<I>(n: u32, iter: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = ((CategoryId, CategoryId), u32)>,
    {
        let mut edges = BTreeMap::new();
        for ((u, v), m) in iter {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if m > 0 {
                *edges.entry((u, v)).or_insert(0) += m;
            }
        }
        Ok(DirectedMultigraph {
            n,
            edges,
            words: None,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    /// Total edge count, multiplicities included.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().map(|&m| m as u64).sum()
    }

    /// Number of distinct connected ordered pairs.
    pub fn pair_count(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicity(&self, u: CategoryId, v: CategoryId) -> u32 {
        self.edges.get(&(u, v)).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (CategoryId, CategoryId, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn words(&self, u: CategoryId, v: CategoryId) -> Option<&[String]> {
        self.words
            .as_ref()
            .and_then(|w| w.get(&(u, v)))
            .map(|v| v.as_slice())
    }

    /// Expands the multiplicity map into one entry per parallel edge.
    pub fn edge_list(&self) -> Vec<(CategoryId, CategoryId)> {
        let mut out = Vec::with_capacity(self.edge_count() as usize);
        for (u, v, m) in self.edges() {
            for _ in 0..m {
                out.push((u, v));
            }
        }
        out
    }

    /// Simple-graph projection: an arc is present iff its multiplicity is ≥ 1.
    pub fn project_simple(&self) -> DirectedGraph {
        DirectedGraph {
            n: self.n,
            edges: self.edges.keys().copied().collect(),
        }
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n as usize];
        for (_, v, m) in self.edges() {
            d[v.index()] += m as u64;
        }
        d
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n as usize];
        for (u, _, m) in self.edges() {
            d[u.index()] += m as u64;
        }
        d
    }
}

/// Simple directed graph: at most one arc per ordered pair, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedGraph {
    n: u32,
    edges: BTreeSet<(CategoryId, CategoryId)>,
}

impl DirectedGraph {
    pub fn new(n: u32) -> Self {
        DirectedGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I>(n: u32, iter: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (CategoryId, CategoryId)>,
    {
        let mut edges = BTreeSet::new();
        for (u, v) in iter {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.insert((u, v));
        }
        Ok(DirectedGraph { n, edges })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn has_edge(&self, u: CategoryId, v: CategoryId) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (CategoryId, CategoryId)> + '_ {
        self.edges.iter().copied()
    }

    /// Promotes the edge set to a multigraph with unit multiplicities.
    pub fn to_multigraph(&self) -> DirectedMultigraph {
        DirectedMultigraph {
            n: self.n,
            edges: self.edges.iter().map(|&e| (e, 1)).collect(),
            words: None,
        }
    }

    pub fn in_degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n as usize];
        for (_, v) in self.edges() {
            d[v.index()] += 1;
        }
        d
    }

    pub fn out_degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n as usize];
        for (u, _) in self.edges() {
            d[u.index()] += 1;
        }
        d
    }

    /// Out- and in-adjacency lists, sorted; shared by the motif census,
    /// transitivity, and curvature passes.
    pub fn adjacency(&self) -> Adjacency {
        let n = self.n as usize;
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (u, v) in self.edges() {
            out[u.index()].push(v);
            inn[v.index()].push(u);
        }
        Adjacency { out, inn }
    }
}

/// Precomputed adjacency lists of a [`DirectedGraph`].
#[derive(Debug, Clone)]
pub struct Adjacency {
    pub out: Vec<Vec<CategoryId>>,
    pub inn: Vec<Vec<CategoryId>>,
}

impl Adjacency {
    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// Undirected neighbor lists (union of in and out, deduplicated).
    pub fn undirected(&self) -> Vec<Vec<CategoryId>> {
        let mut und = vec![Vec::new(); self.n()];
        for (v, (o, i)) in self.out.iter().zip(self.inn.iter()).enumerate() {
            let mut set: BTreeSet<CategoryId> = o.iter().copied().collect();
            set.extend(i.iter().copied());
            und[v] = set.into_iter().collect();
        }
        und
    }
}

/// Per-category size table used to normalise degrees into densities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySizeTable {
    sizes: Vec<u32>,
}

impl CategorySizeTable {
    pub fn new(sizes: Vec<u32>) -> Self {
        CategorySizeTable { sizes }
    }

    pub fn get(&self, c: CategoryId) -> Option<u32> {
        self.sizes.get(c.index()).copied().filter(|&s| s > 0)
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

/// Degree, size, and density of one category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub category: CategoryId,
    pub in_degree: u64,
    pub out_degree: u64,
    pub size: u32,
    pub in_density: f64,
    pub out_density: f64,
}

fn degree_records(
    n: u32,
    ins: Vec<u64>,
    outs: Vec<u64>,
    sizes: &CategorySizeTable,
) -> Result<Vec<DegreeRecord>, GraphError> {
    (0..n)
        .map(|i| {
            let c = CategoryId(i);
            let size = sizes.get(c).ok_or(GraphError::MissingSize(c))?;
            let in_degree = ins[c.index()];
            let out_degree = outs[c.index()];
            Ok(DegreeRecord {
                category: c,
                in_degree,
                out_degree,
                size,
                in_density: in_degree as f64 / size as f64,
                out_density: out_degree as f64 / size as f64,
            })
        })
        .collect()
}

/// Degrees of the simple graph (pair counts).
pub fn degrees_simple(
    g: &DirectedGraph,
    sizes: &CategorySizeTable,
) -> Result<Vec<DegreeRecord>, GraphError> {
    degree_records(g.n, g.in_degrees(), g.out_degrees(), sizes)
}

/// Degrees of the multigraph (multiplicity-weighted).
pub fn degrees_multi(
    g: &DirectedMultigraph,
    sizes: &CategorySizeTable,
) -> Result<Vec<DegreeRecord>, GraphError> {
    degree_records(g.n, g.in_degrees(), g.out_degrees(), sizes)
}
