//! Census of connected directed subgraphs of sizes 2 and 3, significance
//! against configuration ensembles, and per-vertex outward transitivity.
//!
//! Counting follows the induced-subgraph convention: every set of 2 or 3
//! distinct vertices whose induced subgraph is weakly connected contributes
//! exactly one count, to the isomorphism class of that induced subgraph.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Adjacency, CategoryId, DirectedGraph};
use crate::null_models::{run_ensemble, EnsembleStats, NullModel, StdKind};

#[derive(Debug, Error)]
pub enum MotifError {
    #[error("unsupported motif size {0} (only 2 and 3)")]
    UnsupportedSize(u8),
    #[error(transparent)]
    NullModel(#[from] crate::null_models::NullModelError),
}

/// Isomorphism class of a connected directed subgraph on 2 or 3 vertices.
///
/// `canonical_code` encodes the adjacency matrix as bits `i*size + j`
/// (row-major, diagonal always 0), minimized over all vertex permutations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MotifClass {
    pub size: u8,
    pub canonical_code: u16,
    pub label: String,
}

fn permute_code(code: u16, size: usize, perm: &[usize]) -> u16 {
    let mut out = 0u16;
    for i in 0..size {
        for j in 0..size {
            if i != j && code & (1 << (i * size + j)) != 0 {
                out |= 1 << (perm[i] * size + perm[j]);
            }
        }
    }
    out
}

fn canonicalize(code: u16, size: usize) -> u16 {
    let perms: &[&[usize]] = match size {
        2 => &[&[0, 1], &[1, 0]],
        3 => &[
            &[0, 1, 2],
            &[0, 2, 1],
            &[1, 0, 2],
            &[1, 2, 0],
            &[2, 0, 1],
            &[2, 1, 0],
        ],
        _ => unreachable!(),
    };
    perms
        .iter()
        .map(|p| permute_code(code, size, p))
        .min()
        .unwrap()
}

#[cfg_attr(not(test), allow(dead_code))]
fn is_weakly_connected(code: u16, size: usize) -> bool {
    let mut und = [[false; 3]; 3];
    for i in 0..size {
        for j in 0..size {
            if i != j && code & (1 << (i * size + j)) != 0 {
                und[i][j] = true;
                und[j][i] = true;
            }
        }
    }
    let mut seen = [false; 3];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for (w, item) in seen.iter_mut().enumerate().take(size) {
            if und[v][w] && !*item {
                *item = true;
                stack.push(w);
            }
        }
    }
    seen[..size].iter().all(|&s| s)
}

fn code_of_edges(size: usize, edges: &[(usize, usize)]) -> u16 {
    edges
        .iter()
        .fold(0u16, |c, &(i, j)| c | (1 << (i * size + j)))
}

/// Representatives fixing the human label of each class. The direction
/// suffixes follow the standard triad-census naming.
fn representatives(size: usize) -> Vec<(&'static str, Vec<(usize, usize)>)> {
    match size {
        2 => vec![
            ("single arc", vec![(0, 1)]),
            ("mutual dyad", vec![(0, 1), (1, 0)]),
        ],
        3 => vec![
            ("chain 021C", vec![(0, 1), (1, 2)]),
            ("out-star 021D", vec![(1, 0), (1, 2)]),
            ("in-star 021U", vec![(0, 1), (2, 1)]),
            ("mutual+arc-in 111U", vec![(0, 1), (1, 0), (2, 0)]),
            ("mutual+arc-out 111D", vec![(0, 1), (1, 0), (0, 2)]),
            ("cycle 030C", vec![(0, 1), (1, 2), (2, 0)]),
            ("feed-forward 030T", vec![(0, 1), (1, 2), (0, 2)]),
            ("mutual path 201", vec![(0, 1), (1, 0), (1, 2), (2, 1)]),
            ("mutual+2in 120U", vec![(0, 1), (1, 0), (2, 0), (2, 1)]),
            ("mutual+2out 120D", vec![(0, 1), (1, 0), (0, 2), (1, 2)]),
            ("mutual+through 120C", vec![(0, 1), (1, 0), (2, 0), (1, 2)]),
            (
                "two mutual+arc 210",
                vec![(0, 1), (1, 0), (1, 2), (2, 1), (0, 2)],
            ),
            (
                "complete mutual 300",
                vec![(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)],
            ),
        ],
        _ => unreachable!(),
    }
}

fn class_table(size: usize) -> &'static Vec<MotifClass> {
    static SIZE2: OnceLock<Vec<MotifClass>> = OnceLock::new();
    static SIZE3: OnceLock<Vec<MotifClass>> = OnceLock::new();
    let cell = match size {
        2 => &SIZE2,
        3 => &SIZE3,
        _ => unreachable!(),
    };
    cell.get_or_init(|| {
        let mut classes: Vec<MotifClass> = representatives(size)
            .into_iter()
            .map(|(label, edges)| MotifClass {
                size: size as u8,
                canonical_code: canonicalize(code_of_edges(size, &edges), size),
                label: label.to_string(),
            })
            .collect();
        classes.sort();
        classes
    })
}

/// All connected classes of the given size (2 at size 2, 13 at size 3).
pub fn motif_classes(size: u8) -> Result<&'static [MotifClass], MotifError> {
    match size {
        2 | 3 => Ok(class_table(size as usize)),
        other => Err(MotifError::UnsupportedSize(other)),
    }
}

/// Induced-subgraph census: canonical class code → count of vertex sets.
pub fn census(g: &DirectedGraph, size: u8) -> Result<BTreeMap<u16, u64>, MotifError> {
    match size {
        2 => Ok(census2(g)),
        3 => Ok(census3(g)),
        other => Err(MotifError::UnsupportedSize(other)),
    }
}

fn census2(g: &DirectedGraph) -> BTreeMap<u16, u64> {
    let mut counts = BTreeMap::new();
    for (u, v) in g.edges() {
        if u > v && g.has_edge(v, u) {
            continue; // mutual pair already counted from the (v,u) arc
        }
        let code = if g.has_edge(v, u) {
            code_of_edges(2, &[(0, 1), (1, 0)])
        } else {
            code_of_edges(2, &[(0, 1)])
        };
        *counts.entry(canonicalize(code, 2)).or_insert(0) += 1;
    }
    counts
}

fn induced_code3(g: &DirectedGraph, t: [CategoryId; 3]) -> u16 {
    let mut code = 0u16;
    for i in 0..3 {
        for j in 0..3 {
            if i != j && g.has_edge(t[i], t[j]) {
                code |= 1 << (i * 3 + j);
            }
        }
    }
    code
}

fn census3(g: &DirectedGraph) -> BTreeMap<u16, u64> {
    let adj = g.adjacency();
    let und = adj.undirected();
    let mut counts = BTreeMap::new();
    let mut bump = |g: &DirectedGraph, t: [CategoryId; 3]| {
        let code = induced_code3(g, t);
        *counts.entry(canonicalize(code, 3)).or_insert(0) += 1;
    };
    // Every connected triple has a center adjacent to the other two. A
    // triangle (all three pairs adjacent) is seen from all three centers,
    // so it is counted only from its smallest vertex; an open triple only
    // from its unique center.
    for b in 0..und.len() {
        let nb = &und[b];
        for (x, &a) in nb.iter().enumerate() {
            for &c in &nb[x + 1..] {
                let closed = und[a.index()].binary_search(&c).is_ok();
                if closed && !(b < a.index() && b < c.index()) {
                    continue;
                }
                bump(g, [a, CategoryId(b as u32), c]);
            }
        }
    }
    counts
}

/// One row of a motif-significance report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifRow {
    pub class_code: u16,
    pub label: String,
    pub n_real: u64,
    pub rand_mean: f64,
    pub rand_std: f64,
    /// `None` when the ensemble is degenerate (zero standard deviation).
    pub z: Option<f64>,
    pub flag: MotifFlag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MotifFlag {
    Motif,
    Antimotif,
    NotSignificant,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotifReport {
    pub size: u8,
    pub replicates: u32,
    pub seed: u64,
    pub swaps: u64,
    pub rows: Vec<MotifRow>,
}

/// Census on `g` and on `replicates` degree-preserving simple
/// randomizations; Z per class with the |Z| > 2 motif rule.
pub fn motif_significance(
    g: &DirectedGraph,
    size: u8,
    replicates: u32,
    swaps: Option<u64>,
    seed: u64,
) -> Result<MotifReport, MotifError> {
    let real = census(g, size)?;
    let template = g.to_multigraph();
    let stats: EnsembleStats = run_ensemble(
        &template,
        NullModel::ConfigSimple,
        replicates,
        swaps,
        seed,
        StdKind::Population,
        &format!("motif-census-{size}"),
        |replica| {
            census(&replica.project_simple(), size)
                .expect("size already validated")
                .into_iter()
                .map(|(code, count)| (code as i64, count as f64))
                .collect()
        },
    )?;
    let rows = class_table(size as usize)
        .iter()
        .map(|class| {
            let n_real = real.get(&class.canonical_code).copied().unwrap_or(0);
            let (rand_mean, rand_std) = stats.get(class.canonical_code as i64).unwrap_or((0.0, 0.0));
            let z = if rand_std > 0.0 {
                Some((n_real as f64 - rand_mean) / rand_std)
            } else {
                None
            };
            let flag = match z {
                None => MotifFlag::Degenerate,
                Some(z) if z > 2.0 => MotifFlag::Motif,
                Some(z) if z < -2.0 => MotifFlag::Antimotif,
                Some(_) => MotifFlag::NotSignificant,
            };
            MotifRow {
                class_code: class.canonical_code,
                label: class.label.clone(),
                n_real,
                rand_mean,
                rand_std,
                z,
                flag,
            }
        })
        .collect();
    Ok(MotifReport {
        size,
        replicates,
        seed,
        swaps: stats.swaps,
        rows,
    })
}

/// Which returning arc closes a 2-path `(v→h, h→w)` into a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ClosureRule {
    /// Cycle closure `w→v`, as in the outward-transitivity definition.
    #[default]
    Inward,
    /// Transitive closure `v→w`; sensitivity-analysis variant.
    Outward,
}

/// Outward transitivity of one vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitivityRecord {
    pub vertex: CategoryId,
    /// Number of directed 2-paths (v→h, h→w), w ≠ v.
    pub path_count: u64,
    pub closed_count: u64,
    /// `None` when no 2-path leaves the vertex.
    pub transitivity: Option<f64>,
}

/// Per-vertex fraction of directed 2-paths leaving `v` that are closed by a
/// returning arc (rule-dependent).
pub fn outward_transitivity(g: &DirectedGraph, rule: ClosureRule) -> Vec<TransitivityRecord> {
    let adj: Adjacency = g.adjacency();
    (0..adj.n())
        .map(|vi| {
            let v = CategoryId(vi as u32);
            let mut paths = 0u64;
            let mut closed = 0u64;
            for &h in &adj.out[vi] {
                for &w in &adj.out[h.index()] {
                    if w == v {
                        continue;
                    }
                    paths += 1;
                    let closing = match rule {
                        ClosureRule::Inward => g.has_edge(w, v),
                        ClosureRule::Outward => g.has_edge(v, w),
                    };
                    if closing {
                        closed += 1;
                    }
                }
            }
            TransitivityRecord {
                vertex: v,
                path_count: paths,
                closed_count: closed,
                transitivity: (paths > 0).then(|| closed as f64 / paths as f64),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32, edges: &[(u32, u32)]) -> DirectedGraph {
        DirectedGraph::from_edges(
            n,
            edges.iter().map(|&(u, v)| (CategoryId(u), CategoryId(v))),
        )
        .unwrap()
    }

    fn class_code(size: usize, label: &str) -> u16 {
        class_table(size)
            .iter()
            .find(|c| c.label == label)
            .unwrap()
            .canonical_code
    }

    #[test]
    fn exactly_2_and_13_classes() {
        assert_eq!(motif_classes(2).unwrap().len(), 2);
        assert_eq!(motif_classes(3).unwrap().len(), 13);
        assert!(motif_classes(4).is_err());
        // representatives cover every weakly connected 3-vertex digraph
        let classes = class_table(3);
        for code in 0u16..64 {
            let full = (0..3)
                .flat_map(|i| (0..3).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j)
                .enumerate()
                .fold(0u16, |acc, (bit, (i, j))| {
                    if code & (1 << bit) != 0 {
                        acc | (1 << (i * 3 + j))
                    } else {
                        acc
                    }
                });
            if is_weakly_connected(full, 3) {
                let canon = canonicalize(full, 3);
                assert!(
                    classes.iter().any(|c| c.canonical_code == canon),
                    "code {full:#b} not covered"
                );
            }
        }
    }

    #[test]
    fn canonical_code_permutation_invariant() {
        let code = code_of_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            assert_eq!(
                canonicalize(permute_code(code, 3, &perm), 3),
                canonicalize(code, 3)
            );
        }
    }

    #[test]
    fn chain_census() {
        let graph = g(3, &[(0, 1), (1, 2)]);
        let c3 = census(&graph, 3).unwrap();
        assert_eq!(c3.get(&class_code(3, "chain 021C")), Some(&1));
        assert_eq!(c3.values().sum::<u64>(), 1);
        let c2 = census(&graph, 2).unwrap();
        assert_eq!(c2.get(&class_code(2, "single arc")), Some(&2));
    }

    #[test]
    fn cycle_census() {
        let graph = g(3, &[(0, 1), (1, 2), (2, 0)]);
        let c3 = census(&graph, 3).unwrap();
        assert_eq!(c3.get(&class_code(3, "cycle 030C")), Some(&1));
        assert_eq!(c3.values().sum::<u64>(), 1);
    }

    #[test]
    fn relabeling_leaves_census_unchanged() {
        let a = g(4, &[(0, 1), (1, 2), (0, 2), (3, 0)]);
        // same graph under 0->3, 1->2, 2->0, 3->1
        let b = g(4, &[(3, 2), (2, 0), (3, 0), (1, 3)]);
        assert_eq!(census(&a, 3).unwrap(), census(&b, 3).unwrap());
        assert_eq!(census(&a, 2).unwrap(), census(&b, 2).unwrap());
    }

    #[test]
    fn transitivity_three_cycle() {
        let graph = g(3, &[(0, 1), (1, 2), (2, 0)]);
        let t = outward_transitivity(&graph, ClosureRule::Inward);
        for r in &t {
            assert_eq!(r.path_count, 1);
            assert_eq!(r.transitivity, Some(1.0));
        }
    }

    #[test]
    fn transitivity_chain() {
        let graph = g(3, &[(0, 1), (1, 2)]);
        let t = outward_transitivity(&graph, ClosureRule::Inward);
        assert_eq!(t[0].transitivity, Some(0.0));
        assert_eq!(t[1].transitivity, None);
        assert_eq!(t[1].path_count, 0);
    }

    #[test]
    fn outward_variant_closes_feed_forward() {
        let graph = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let t = outward_transitivity(&graph, ClosureRule::Outward);
        assert_eq!(t[0].transitivity, Some(1.0));
        let t = outward_transitivity(&graph, ClosureRule::Inward);
        assert_eq!(t[0].transitivity, Some(0.0));
    }

    #[test]
    fn degenerate_ensemble_flagged() {
        // a single mutual dyad admits no valid swap; every replicate equals g
        let graph = g(2, &[(0, 1), (1, 0)]);
        let report = motif_significance(&graph, 2, 5, None, 1).unwrap();
        let mutual = report
            .rows
            .iter()
            .find(|r| r.label == "mutual dyad")
            .unwrap();
        assert_eq!(mutual.n_real, 1);
        assert_eq!(mutual.rand_mean, 1.0);
        assert_eq!(mutual.flag, MotifFlag::Degenerate);
    }
}
