//! Structural-role distance and Ward agglomerative clustering with full
//! ties-in-proximity dendrogram enumeration.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CategoryId, DirectedGraph};

#[derive(Debug, Error)]
pub enum ClusterError {
    #[error("distance matrix must have at least one point")]
    Empty,
}

/// Symmetric matrix of role distances, each entry the sum of the in- and
/// out-neighborhood Jaccard distances (range [0, 2]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleDistanceMatrix {
    pub n: usize,
    data: Vec<f64>, // row-major n×n
}

impl RoleDistanceMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        RoleDistanceMatrix { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }
}

fn jaccard_distance(a: &[CategoryId], b: &[CategoryId]) -> f64 {
    // inputs sorted; 0/0 := 0 (identical empty neighborhoods)
    let mut i = 0;
    let mut j = 0;
    let mut inter = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                inter += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.len() + b.len() - inter;
    if union == 0 {
        0.0
    } else {
        (union - inter) as f64 / union as f64
    }
}

/// Role distance between every pair of vertices: Jaccard distance of the
/// in-neighbor sets plus Jaccard distance of the out-neighbor sets.
pub fn role_distance(g: &DirectedGraph) -> RoleDistanceMatrix {
    let adj = g.adjacency();
    RoleDistanceMatrix::from_fn(adj.n(), |i, j| {
        jaccard_distance(&adj.inn[i], &adj.inn[j]) + jaccard_distance(&adj.out[i], &adj.out[j])
    })
}

/// One agglomeration step. Nodes `0..n_leaves` are leaves; merge `k`
/// creates node `n_leaves + k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dendrogram {
    pub n_leaves: usize,
    pub merges: Vec<Merge>,
}

impl Dendrogram {
    /// Sorted leaf ids under each internal node.
    pub fn leaf_sets(&self) -> Vec<Vec<u32>> {
        let mut sets: Vec<Vec<u32>> = (0..self.n_leaves).map(|i| vec![i as u32]).collect();
        for m in &self.merges {
            let mut s = sets[m.left].clone();
            s.extend_from_slice(&sets[m.right]);
            s.sort_unstable();
            sets.push(s);
        }
        sets.split_off(self.n_leaves)
    }

    /// Canonical structural key of each internal node: children ordered by
    /// smallest contained leaf, heights ignored.
    pub fn subtree_keys(&self) -> Vec<String> {
        let mut keys: Vec<String> = (0..self.n_leaves).map(|i| i.to_string()).collect();
        let mut min_leaf: Vec<u32> = (0..self.n_leaves as u32).collect();
        let mut out = Vec::with_capacity(self.merges.len());
        for m in &self.merges {
            let (a, b) = if min_leaf[m.left] <= min_leaf[m.right] {
                (m.left, m.right)
            } else {
                (m.right, m.left)
            };
            let key = format!("({},{})", keys[a], keys[b]);
            min_leaf.push(min_leaf[m.left].min(min_leaf[m.right]));
            keys.push(key.clone());
            out.push(key);
        }
        out
    }

    /// Whole-tree canonical key used for deduplication.
    pub fn canonical_key(&self) -> String {
        self.subtree_keys()
            .last()
            .cloned()
            .unwrap_or_else(|| "0".to_string())
    }

    /// Newick serialization with merge heights as branch lengths
    /// (child branch length = parent height − child height).
    pub fn to_newick(&self, name_of: impl Fn(usize) -> String) -> String {
        fn emit(
            d: &Dendrogram,
            node: usize,
            parent_height: f64,
            name_of: &impl Fn(usize) -> String,
            out: &mut String,
        ) {
            if node < d.n_leaves {
                out.push_str(&name_of(node));
                out.push_str(&format!(":{:.9}", parent_height));
            } else {
                let m = d.merges[node - d.n_leaves];
                out.push('(');
                emit(d, m.left, m.height, name_of, out);
                out.push(',');
                emit(d, m.right, m.height, name_of, out);
                out.push(')');
                out.push_str(&format!(":{:.9}", parent_height - m.height));
            }
        }
        let mut s = String::new();
        if self.merges.is_empty() {
            s.push_str(&name_of(0));
        } else {
            let root = self.n_leaves + self.merges.len() - 1;
            let m = self.merges[self.merges.len() - 1];
            s.push('(');
            emit(self, m.left, m.height, &name_of, &mut s);
            s.push(',');
            emit(self, m.right, m.height, &name_of, &mut s);
            s.push(')');
            let _ = root;
        }
        s.push(';');
        s
    }
}

/// All distinct Ward dendrograms arising from ties in proximity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DendrogramSet {
    pub dendrograms: Vec<Dendrogram>,
    /// True when enumeration stopped at the cap; the set is then partial.
    pub truncated: bool,
    pub tie_epsilon: f64,
}

struct Enumerator {
    n_leaves: usize,
    cap: usize,
    eps: f64,
    // keyed by canonical form so identical trees found along different
    // branches collapse to one
    found: BTreeMap<String, Dendrogram>,
    truncated: bool,
}

#[derive(Clone)]
struct ActiveState {
    // node ids of active clusters, their sizes, and pairwise distances
    nodes: Vec<usize>,
    sizes: Vec<usize>,
    dist: Vec<Vec<f64>>,
    merges: Vec<Merge>,
}

impl Enumerator {
    fn ties(&self, st: &ActiveState) -> Vec<(usize, usize)> {
        let k = st.nodes.len();
        let mut dmin = f64::INFINITY;
        for i in 0..k {
            for j in (i + 1)..k {
                dmin = dmin.min(st.dist[i][j]);
            }
        }
        let tol = self.eps * dmin.abs().max(1.0);
        let mut ties = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                if st.dist[i][j] <= dmin + tol {
                    ties.push((i, j));
                }
            }
        }
        ties
    }

    fn merge(&self, st: &ActiveState, i: usize, j: usize) -> ActiveState {
        let mut st = st.clone();
        let d_ij = st.dist[i][j];
        let ni = st.sizes[i] as f64;
        let nj = st.sizes[j] as f64;
        let new_node = self.n_leaves + st.merges.len();
        st.merges.push(Merge {
            left: st.nodes[i],
            right: st.nodes[j],
            height: d_ij,
        });
        // Lance–Williams update with Ward coefficients
        let k = st.nodes.len();
        let mut new_row = Vec::with_capacity(k - 2);
        for m in 0..k {
            if m == i || m == j {
                continue;
            }
            let nk = st.sizes[m] as f64;
            let total = ni + nj + nk;
            let ai = (ni + nk) / total;
            let aj = (nj + nk) / total;
            let beta = -nk / total;
            new_row.push(ai * st.dist[i][m] + aj * st.dist[j][m] + beta * d_ij);
        }
        // drop rows/cols j then i (j > i)
        let (hi, lo) = (i.max(j), i.min(j));
        for row in st.dist.iter_mut() {
            row.remove(hi);
            row.remove(lo);
        }
        st.dist.remove(hi);
        st.dist.remove(lo);
        st.nodes.remove(hi);
        st.nodes.remove(lo);
        st.sizes.remove(hi);
        st.sizes.remove(lo);
        let new_size = (ni + nj) as usize;
        for (row, &d) in st.dist.iter_mut().zip(new_row.iter()) {
            row.push(d);
        }
        new_row.push(0.0);
        st.dist.push(new_row);
        st.nodes.push(new_node);
        st.sizes.push(new_size);
        st
    }

    fn explore(&mut self, st: ActiveState) {
        if self.truncated {
            return;
        }
        if st.nodes.len() <= 1 {
            let d = Dendrogram {
                n_leaves: self.n_leaves,
                merges: st.merges,
            };
            let key = d.canonical_key();
            if !self.found.contains_key(&key) {
                if self.found.len() >= self.cap {
                    self.truncated = true;
                    return;
                }
                self.found.insert(key, d);
            }
            return;
        }
        for (i, j) in self.ties(&st) {
            self.explore(self.merge(&st, i, j));
            if self.truncated {
                return;
            }
        }
    }
}

/// Enumerates every Ward dendrogram reachable by resolving ties in
/// proximity in all possible orders, deduplicated by canonical form.
pub fn ward_hca_all(
    dist: &RoleDistanceMatrix,
    cap: usize,
    tie_epsilon: f64,
) -> Result<DendrogramSet, ClusterError> {
    if dist.n == 0 {
        return Err(ClusterError::Empty);
    }
    assert!(cap >= 1);
    let n = dist.n;
    let st = ActiveState {
        nodes: (0..n).collect(),
        sizes: vec![1; n],
        dist: (0..n)
            .map(|i| (0..n).map(|j| dist.get(i, j)).collect())
            .collect(),
        merges: Vec::new(),
    };
    let mut e = Enumerator {
        n_leaves: n,
        cap,
        eps: tie_epsilon,
        found: BTreeMap::new(),
        truncated: false,
    };
    e.explore(st);
    Ok(DendrogramSet {
        dendrograms: e.found.into_values().collect(),
        truncated: e.truncated,
        tie_epsilon,
    })
}

/// Default relative tie tolerance for Lance–Williams distances.
pub const DEFAULT_TIE_EPSILON: f64 = 1e-12;
/// Default dendrogram cap; ties can explode combinatorially.
pub const DEFAULT_CAP: usize = 10_000;

/// Appearance statistics of one distinct cluster (subtree) across the set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub leafset_hash: String,
    pub size: usize,
    pub subtree_fraction: f64,
    pub leafset_fraction: f64,
    pub members: Vec<u32>,
}

fn leafset_hash(members: &[u32]) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    for m in members {
        h.update(m.to_le_bytes());
    }
    let digest = h.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Per distinct subtree: the fraction of dendrograms containing that exact
/// subtree, and the fraction containing its leaf set (under any internal
/// structure). Sorted by size, then fractions, then members.
pub fn cluster_stability(ds: &DendrogramSet) -> Vec<StabilityRow> {
    assert!(!ds.dendrograms.is_empty());
    let r = ds.dendrograms.len() as f64;
    // distinct subtree key -> (leafset, dendrogram count)
    let mut subtree_count: BTreeMap<String, (Vec<u32>, u64)> = BTreeMap::new();
    let mut leafset_count: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for d in &ds.dendrograms {
        let keys = d.subtree_keys();
        let sets = d.leaf_sets();
        let mut seen_sub: std::collections::BTreeSet<&String> = Default::default();
        let mut seen_set: std::collections::BTreeSet<&Vec<u32>> = Default::default();
        for (key, set) in keys.iter().zip(sets.iter()) {
            if seen_sub.insert(key) {
                let e = subtree_count
                    .entry(key.clone())
                    .or_insert_with(|| (set.clone(), 0));
                e.1 += 1;
            }
            if seen_set.insert(set) {
                *leafset_count.entry(set.clone()).or_insert(0) += 1;
            }
        }
    }
    let mut rows: Vec<StabilityRow> = subtree_count
        .into_values()
        .map(|(members, count)| StabilityRow {
            leafset_hash: leafset_hash(&members),
            size: members.len(),
            subtree_fraction: count as f64 / r,
            leafset_fraction: leafset_count[&members] as f64 / r,
            members,
        })
        .collect();
    rows.sort_by(|a, b| {
        a.size
            .cmp(&b.size)
            .then(a.subtree_fraction.partial_cmp(&b.subtree_fraction).unwrap())
            .then(a.members.cmp(&b.members))
    });
    rows
}
