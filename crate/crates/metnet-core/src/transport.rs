//! Exact Wasserstein-1 for small discrete transport problems.
//!
//! Masses are rational (integer numerators over the side totals), costs are
//! integer hop counts, and the optimum is found by an integer min-cost-flow
//! computation, so the result is exact up to one final division.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransportError {
    #[error("empty support on one side")]
    EmptySupport,
    #[error("mass on source {0} cannot be routed over finite costs")]
    Unreachable(usize),
    #[error("supply and demand totals are zero")]
    ZeroMass,
}

/// Balanced transport problem. Source mass `i` is `supplies[i] / Σ supplies`
/// and target mass `j` is `demands[j] / Σ demands`; both sides therefore sum
/// to exactly 1. `costs[i][j]` is the integer cost, `None` meaning ∞.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportProblem {
    pub supplies: Vec<u64>,
    pub demands: Vec<u64>,
    pub costs: Vec<Vec<Option<u64>>>,
}

struct Mcmf {
    // edge arrays: to, capacity, cost; reverse edge at index ^ 1
    to: Vec<usize>,
    cap: Vec<u64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Mcmf {
    fn new(n: usize) -> Self {
        Mcmf {
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: u64, cost: i64) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
    }

    /// Successive shortest paths with Dijkstra and potentials; costs are
    /// non-negative, so initial potentials of zero are valid.
    fn min_cost_flow(&mut self, s: usize, t: usize, mut required: u64) -> Option<i128> {
        let n = self.adj.len();
        let mut potential = vec![0i64; n];
        let mut total_cost: i128 = 0;
        while required > 0 {
            let mut dist = vec![i64::MAX; n];
            let mut prev_edge = vec![usize::MAX; n];
            let mut heap = std::collections::BinaryHeap::new();
            dist[s] = 0;
            heap.push(std::cmp::Reverse((0i64, s)));
            while let Some(std::cmp::Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &e in &self.adj[u] {
                    if self.cap[e] == 0 {
                        continue;
                    }
                    let v = self.to[e];
                    let nd = d + self.cost[e] + potential[u] - potential[v];
                    if nd < dist[v] {
                        dist[v] = nd;
                        prev_edge[v] = e;
                        heap.push(std::cmp::Reverse((nd, v)));
                    }
                }
            }
            if dist[t] == i64::MAX {
                return None;
            }
            for v in 0..n {
                if dist[v] != i64::MAX {
                    potential[v] += dist[v];
                }
            }
            // bottleneck along the path
            let mut push = required;
            let mut v = t;
            while v != s {
                let e = prev_edge[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = prev_edge[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                total_cost += push as i128 * self.cost[e] as i128;
                v = self.to[e ^ 1];
            }
            required -= push;
        }
        Some(total_cost)
    }
}

/// Exact optimum of the balanced transportation problem; mass may split
/// across several targets.
pub fn w1(tp: &TransportProblem) -> Result<f64, TransportError> {
    let m = tp.supplies.len();
    let n = tp.demands.len();
    if m == 0 || n == 0 {
        return Err(TransportError::EmptySupport);
    }
    let supply_total: u64 = tp.supplies.iter().sum();
    let demand_total: u64 = tp.demands.iter().sum();
    if supply_total == 0 || demand_total == 0 {
        return Err(TransportError::ZeroMass);
    }
    for (i, &s) in tp.supplies.iter().enumerate() {
        if s > 0 && tp.costs[i].iter().all(|c| c.is_none()) {
            return Err(TransportError::Unreachable(i));
        }
    }
    // scale both sides to the common integer total supply_total * demand_total
    let s_node = m + n;
    let t_node = m + n + 1;
    let mut flow = Mcmf::new(m + n + 2);
    for (i, &s) in tp.supplies.iter().enumerate() {
        flow.add_edge(s_node, i, s * demand_total, 0);
    }
    for (j, &d) in tp.demands.iter().enumerate() {
        flow.add_edge(m + j, t_node, d * supply_total, 0);
    }
    for i in 0..m {
        for (j, &c) in tp.costs[i].iter().enumerate() {
            if let Some(c) = c {
                flow.add_edge(i, m + j, u64::MAX / 4, c as i64);
            }
        }
    }
    let total = supply_total * demand_total;
    match flow.min_cost_flow(s_node, t_node, total) {
        Some(cost) => Ok(cost as f64 / total as f64),
        None => {
            // identify a source stuck behind infinite costs
            let blocked = tp
                .costs
                .iter()
                .position(|row| row.iter().any(|c| c.is_none()))
                .unwrap_or(0);
            Err(TransportError::Unreachable(blocked))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(costs: &[&[u64]]) -> Vec<Vec<Option<u64>>> {
        costs
            .iter()
            .map(|row| row.iter().map(|&c| Some(c)).collect())
            .collect()
    }

    #[test]
    fn identical_distributions_zero_cost() {
        let tp = TransportProblem {
            supplies: vec![1, 2, 3],
            demands: vec![1, 2, 3],
            costs: dense(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]),
        };
        assert_eq!(w1(&tp).unwrap(), 0.0);
    }

    #[test]
    fn single_atom_cost_three() {
        let tp = TransportProblem {
            supplies: vec![1],
            demands: vec![1],
            costs: dense(&[&[3]]),
        };
        assert_eq!(w1(&tp).unwrap(), 3.0);
    }

    #[test]
    fn splitting_beats_greedy() {
        // one source of mass 1 split over two targets of mass 1/2 each
        let tp = TransportProblem {
            supplies: vec![1],
            demands: vec![1, 1],
            costs: dense(&[&[1, 3]]),
        };
        assert_eq!(w1(&tp).unwrap(), 2.0);
    }

    #[test]
    fn unreachable_mass_is_an_error() {
        let tp = TransportProblem {
            supplies: vec![1, 1],
            demands: vec![1, 1],
            costs: vec![vec![Some(1), Some(2)], vec![None, None]],
        };
        assert_eq!(w1(&tp).unwrap_err(), TransportError::Unreachable(1));
    }

    #[test]
    fn symmetric_costs_symmetric_w1() {
        let costs = dense(&[&[0, 2, 4], &[2, 0, 1], &[4, 1, 0]]);
        let a = TransportProblem {
            supplies: vec![3, 1, 2],
            demands: vec![1, 4, 1],
            costs: costs.clone(),
        };
        let b = TransportProblem {
            supplies: vec![1, 4, 1],
            demands: vec![3, 1, 2],
            costs,
        };
        assert!((w1(&a).unwrap() - w1(&b).unwrap()).abs() < 1e-12);
    }
}
