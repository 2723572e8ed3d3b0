//! Forman-Ricci and directed Ollivier-Ricci curvature of the multigraph.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{CategoryId, DirectedGraph, DirectedMultigraph};
use crate::transport::{w1, TransportError, TransportProblem};

/// Why an Ollivier curvature value is missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OllivierFlag {
    Defined,
    /// The source vertex has no in-going edges.
    EmptyInSupport,
    /// The target vertex has no out-going edges.
    EmptyOutSupport,
    /// Some support pair that must carry mass is not reachable.
    Unreachable,
}

impl OllivierFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            OllivierFlag::Defined => "defined",
            OllivierFlag::EmptyInSupport => "empty-in-support",
            OllivierFlag::EmptyOutSupport => "empty-out-support",
            OllivierFlag::Unreachable => "unreachable",
        }
    }
}

/// Curvature record of one connected ordered pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeCurvature {
    pub source: CategoryId,
    pub target: CategoryId,
    pub multiplicity: u32,
    pub forman: i64,
    pub ollivier: Option<f64>,
    pub ollivier_flag: OllivierFlag,
}

/// Forman curvature for every connected pair:
/// `F(e) = 2 − #in(source) − #out(target)`, multiplicities included.
pub fn forman_all(g: &DirectedMultigraph) -> Vec<EdgeCurvature> {
    let ins = g.in_degrees();
    let outs = g.out_degrees();
    g.edges()
        .map(|(u, v, m)| EdgeCurvature {
            source: u,
            target: v,
            multiplicity: m,
            forman: 2 - ins[u.index()] as i64 - outs[v.index()] as i64,
            ollivier: None,
            ollivier_flag: OllivierFlag::EmptyInSupport,
        })
        .collect()
}

/// Directed BFS hop counts from each of `sources` to each of `targets` on
/// the simple projection; `None` marks an unreachable pair.
pub fn shortest_hops(
    g: &DirectedGraph,
    sources: &[CategoryId],
    targets: &[CategoryId],
) -> Vec<Vec<Option<u64>>> {
    let adj = g.adjacency();
    sources
        .iter()
        .map(|&s| {
            let mut dist: Vec<Option<u64>> = vec![None; adj.n()];
            let mut queue = std::collections::VecDeque::new();
            dist[s.index()] = Some(0);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = dist[u.index()].unwrap();
                for &w in &adj.out[u.index()] {
                    if dist[w.index()].is_none() {
                        dist[w.index()] = Some(du + 1);
                        queue.push_back(w);
                    }
                }
            }
            targets.iter().map(|&t| dist[t.index()]).collect()
        })
        .collect()
}

/// Ollivier curvature `O(e) = 1 − W1(μ_in(source), μ_out(target))` for every
/// connected pair. The edge measures collapse onto outer endpoints:
/// in-neighbors of the source weighted by multiplicity over the total in
/// degree, and out-neighbors of the target likewise. Hop distances use the
/// full simple projection.
pub fn ollivier_all(g: &DirectedMultigraph) -> Vec<EdgeCurvature> {
    let simple = g.project_simple();
    let adj = simple.adjacency();
    let mut records = forman_all(g);
    for rec in records.iter_mut() {
        let vi = rec.source;
        let vj = rec.target;
        let in_support = &adj.inn[vi.index()];
        let out_support = &adj.out[vj.index()];
        if in_support.is_empty() {
            rec.ollivier_flag = OllivierFlag::EmptyInSupport;
            continue;
        }
        if out_support.is_empty() {
            rec.ollivier_flag = OllivierFlag::EmptyOutSupport;
            continue;
        }
        let supplies: Vec<u64> = in_support
            .iter()
            .map(|&u| g.multiplicity(u, vi) as u64)
            .collect();
        let demands: Vec<u64> = out_support
            .iter()
            .map(|&w| g.multiplicity(vj, w) as u64)
            .collect();
        let costs = shortest_hops(&simple, in_support, out_support);
        let tp = TransportProblem {
            supplies,
            demands,
            costs,
        };
        match w1(&tp) {
            Ok(cost) => {
                rec.ollivier = Some(1.0 - cost);
                rec.ollivier_flag = OllivierFlag::Defined;
            }
            Err(TransportError::Unreachable(_)) => {
                rec.ollivier_flag = OllivierFlag::Unreachable;
            }
            Err(e) => unreachable!("non-empty supports cannot fail otherwise: {e}"),
        }
    }
    records
}

/// Marginal curvature histograms plus the paired scatter export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureHistograms {
    /// Forman value → edge-pair count.
    pub forman: BTreeMap<i64, u64>,
    /// Ollivier histogram over `[lo, lo+width)` bins.
    pub ollivier_width: f64,
    pub ollivier: Vec<(f64, u64)>,
    /// Undefined Ollivier entries by reason.
    pub undefined: BTreeMap<String, u64>,
    /// (forman, ollivier) pairs where both are defined.
    pub scatter: Vec<(i64, f64)>,
}

pub fn curvature_histograms(records: &[EdgeCurvature], ollivier_width: f64) -> CurvatureHistograms {
    assert!(ollivier_width > 0.0);
    let mut forman = BTreeMap::new();
    let mut undefined = BTreeMap::new();
    let mut olli_bins: BTreeMap<i64, u64> = BTreeMap::new();
    let mut scatter = Vec::new();
    for r in records {
        *forman.entry(r.forman).or_insert(0) += 1;
        match r.ollivier {
            Some(o) => {
                let bin = (o / ollivier_width).floor() as i64;
                *olli_bins.entry(bin).or_insert(0) += 1;
                scatter.push((r.forman, o));
            }
            None => {
                *undefined
                    .entry(r.ollivier_flag.as_str().to_string())
                    .or_insert(0) += 1;
            }
        }
    }
    CurvatureHistograms {
        forman,
        ollivier_width,
        ollivier: olli_bins
            .into_iter()
            .map(|(b, c)| (b as f64 * ollivier_width, c))
            .collect(),
        undefined,
        scatter,
    }
}

/// True when the count sequence has a single run of maxima (no dip deeper
/// than `tolerance` relative to the surrounding peaks).
pub fn is_unimodal(counts: &[u64], tolerance: f64) -> bool {
    let vals: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    if vals.len() < 3 {
        return true;
    }
    // deepest valley between the running maximum from the left and right
    let mut left_max = vec![0.0; vals.len()];
    let mut acc: f64 = 0.0;
    for (i, &v) in vals.iter().enumerate() {
        acc = acc.max(v);
        left_max[i] = acc;
    }
    let mut right_max = vec![0.0; vals.len()];
    acc = 0.0;
    for (i, &v) in vals.iter().enumerate().rev() {
        acc = acc.max(v);
        right_max[i] = acc;
    }
    for i in 1..vals.len() - 1 {
        let surround = left_max[i - 1].min(right_max[i + 1]);
        if surround > 0.0 && vals[i] < surround * (1.0 - tolerance) && left_max[i - 1] > vals[i] && right_max[i + 1] > vals[i] {
            return false;
        }
    }
    true
}
