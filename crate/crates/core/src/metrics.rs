//! Exact measurements on a concrete graph.
//!
//! The social distance `d*_u` of a BC node is its graph distance to the FC
//! node set. It is computed for all BC nodes at once by a BFS seeded at every
//! FC node. [`entry_path_distance`] computes the same quantity for one node by
//! a BFS that never expands FC nodes; the two agree because any shortest path
//! into FC can be cut at its first FC node.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{CommunityGraph, NodeId};

/// Default cap on prefix extensions for [`count_entry_paths`].
pub const DEFAULT_EXPANSION_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("graph has no FC nodes")]
    NoFcNodes,
    #[error("node {0} is not a BC node")]
    NotBcNode(u32),
    #[error("maximum entry path length must be at least 1")]
    ZeroLength,
    #[error("entry path enumeration exceeded its budget of {0} prefix extensions")]
    BudgetExceeded(u64),
}

/// Length of the shortest entry path, or none at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SocialDistance {
    Reachable(u32),
    Unreachable,
}

impl SocialDistance {
    pub fn hops(self) -> Option<u32> {
        match self {
            SocialDistance::Reachable(d) => Some(d),
            SocialDistance::Unreachable => None,
        }
    }

    pub fn is_reachable(self) -> bool {
        matches!(self, SocialDistance::Reachable(_))
    }
}

impl fmt::Display for SocialDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SocialDistance::Reachable(d) => write!(f, "{d}"),
            SocialDistance::Unreachable => f.write_str("unreachable"),
        }
    }
}

impl Serialize for SocialDistance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SocialDistance::Reachable(d) => s.serialize_u32(*d),
            SocialDistance::Unreachable => s.serialize_none(),
        }
    }
}

/// Social capital of one node: `1/d*`, or zero when no FC node is reachable.
pub fn capital(d: SocialDistance) -> f64 {
    match d {
        SocialDistance::Reachable(h) => 1.0 / h as f64,
        SocialDistance::Unreachable => 0.0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SocialDistanceReport {
    /// Indexed by BC node.
    pub per_node: Vec<SocialDistance>,
    /// Mean over reachable nodes; `None` when no node is reachable.
    pub mean_dstar: Option<f64>,
    pub histogram: BTreeMap<u32, usize>,
    pub unreachable_count: usize,
    pub cumulative_capital: f64,
}

impl SocialDistanceReport {
    pub fn from_distances(per_node: Vec<SocialDistance>) -> Self {
        let mut histogram = BTreeMap::new();
        let mut sum: u64 = 0;
        let mut unreachable_count = 0;
        for d in &per_node {
            match d.hops() {
                Some(h) => {
                    *histogram.entry(h).or_insert(0) += 1;
                    sum += h as u64;
                }
                None => unreachable_count += 1,
            }
        }
        let reachable = per_node.len() - unreachable_count;
        let mean_dstar = (reachable > 0).then(|| sum as f64 / reachable as f64);
        // Summed by distance class so the result does not depend on node order.
        let cumulative_capital = histogram
            .iter()
            .map(|(&h, &c)| c as f64 / h as f64)
            .sum();
        SocialDistanceReport {
            per_node,
            mean_dstar,
            histogram,
            unreachable_count,
            cumulative_capital,
        }
    }

    pub fn reachable_count(&self) -> usize {
        self.per_node.len() - self.unreachable_count
    }

    pub fn unreachable_fraction(&self) -> f64 {
        if self.per_node.is_empty() {
            0.0
        } else {
            self.unreachable_count as f64 / self.per_node.len() as f64
        }
    }
}

pub fn cumulative_capital(report: &SocialDistanceReport) -> f64 {
    report.cumulative_capital
}

/// `d*_u` for every BC node via one BFS seeded at all FC nodes.
pub fn social_distances(g: &CommunityGraph) -> Result<SocialDistanceReport, MetricsError> {
    if g.n2() == 0 {
        return Err(MetricsError::NoFcNodes);
    }
    let n = g.node_count();
    let mut dist = vec![u32::MAX; n];
    let mut queue: VecDeque<u32> = VecDeque::with_capacity(n);
    for v in g.fc_nodes() {
        dist[v.index()] = 0;
        queue.push_back(v.0);
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u as usize] + 1;
        for &v in g.neighbors(NodeId(u)) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = next;
                queue.push_back(v);
            }
        }
    }
    let per_node = dist[..g.n1()]
        .iter()
        .map(|&d| {
            if d == u32::MAX {
                SocialDistance::Unreachable
            } else {
                SocialDistance::Reachable(d)
            }
        })
        .collect();
    Ok(SocialDistanceReport::from_distances(per_node))
}

/// Shortest entry path from `u`: a BFS over BC nodes that stops at the first
/// FC node it touches.
pub fn entry_path_distance(g: &CommunityGraph, u: NodeId) -> Result<SocialDistance, MetricsError> {
    if !g.is_bc(u.0) || u.index() >= g.node_count() {
        return Err(MetricsError::NotBcNode(u.0));
    }
    let mut dist = vec![u32::MAX; g.n1()];
    dist[u.index()] = 0;
    let mut queue = VecDeque::from([u.0]);
    while let Some(w) = queue.pop_front() {
        let next = dist[w as usize] + 1;
        for &v in g.neighbors(NodeId(w)) {
            if !g.is_bc(v) {
                return Ok(SocialDistance::Reachable(next));
            }
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = next;
                queue.push_back(v);
            }
        }
    }
    Ok(SocialDistance::Unreachable)
}

/// Entry path counts `X_l` from one source, for `l = 1..=max_length`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryPathStats {
    pub source: u32,
    pub max_length: u32,
    /// `counts[l - 1]` is `X_l`.
    pub counts: Vec<u64>,
    pub expansions: u64,
}

impl EntryPathStats {
    /// `X_l`, zero outside the enumerated range.
    pub fn count(&self, l: u32) -> u64 {
        if l == 0 {
            return 0;
        }
        self.counts.get(l as usize - 1).copied().unwrap_or(0)
    }

    /// Smallest `l` with `X_l >= 1`.
    pub fn shortest(&self) -> Option<u32> {
        self.counts.iter().position(|&c| c > 0).map(|i| i as u32 + 1)
    }
}

/// Counts simple paths `u = v1, ..., vk, w` with `v1..vk` distinct BC nodes
/// and `w` an FC node, grouped by length `k`, for `k <= max_length`.
///
/// Enumeration is exhaustive and exponential in the worst case; `budget`
/// bounds the number of BC prefix extensions performed.
pub fn count_entry_paths(
    g: &CommunityGraph,
    u: NodeId,
    max_length: u32,
    budget: u64,
) -> Result<EntryPathStats, MetricsError> {
    if !g.is_bc(u.0) {
        return Err(MetricsError::NotBcNode(u.0));
    }
    if max_length == 0 {
        return Err(MetricsError::ZeroLength);
    }
    let mut walk = PathWalk {
        g,
        max_length,
        budget,
        expansions: 0,
        counts: vec![0; max_length as usize],
        on_path: vec![false; g.n1()],
    };
    walk.extend(u.0, 1)?;
    Ok(EntryPathStats {
        source: u.0,
        max_length,
        counts: walk.counts,
        expansions: walk.expansions,
    })
}

struct PathWalk<'a> {
    g: &'a CommunityGraph,
    max_length: u32,
    budget: u64,
    expansions: u64,
    counts: Vec<u64>,
    on_path: Vec<bool>,
}

impl PathWalk<'_> {
    /// `tail` is the last BC node of a prefix holding `len` BC nodes.
    fn extend(&mut self, tail: u32, len: u32) -> Result<(), MetricsError> {
        let neighbors = self.g.neighbors(NodeId(tail));
        // Neighbor lists are sorted and FC indices sit above every BC index.
        let split = neighbors.partition_point(|&v| self.g.is_bc(v));
        self.counts[len as usize - 1] += (neighbors.len() - split) as u64;
        if len == self.max_length {
            return Ok(());
        }
        self.on_path[tail as usize] = true;
        for &v in &neighbors[..split] {
            if self.on_path[v as usize] {
                continue;
            }
            self.expansions += 1;
            if self.expansions > self.budget {
                return Err(MetricsError::BudgetExceeded(self.budget));
            }
            self.extend(v, len + 1)?;
        }
        self.on_path[tail as usize] = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Complete BC block on `n1` nodes, every cross pair a bridge.
    pub(crate) fn complete(n1: u32, n2: u32) -> CommunityGraph {
        let mut edges = Vec::new();
        for a in 0..n1 + n2 {
            for b in a + 1..n1 + n2 {
                if a < n1 {
                    edges.push((a, b));
                }
            }
        }
        CommunityGraph::build(n1 as usize, n2 as usize, edges).unwrap()
    }

    #[test]
    fn chain_distances() {
        let g = CommunityGraph::build(2, 1, [(0, 1), (1, 2)]).unwrap();
        let r = social_distances(&g).unwrap();
        assert_eq!(
            r.per_node,
            vec![SocialDistance::Reachable(2), SocialDistance::Reachable(1)]
        );
        assert_eq!(r.mean_dstar, Some(1.5));
        assert_eq!(r.cumulative_capital, 1.5);
    }

    #[test]
    fn no_bridges_means_unreachable() {
        let g = CommunityGraph::build(3, 2, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let r = social_distances(&g).unwrap();
        assert_eq!(r.unreachable_count, 3);
        assert_eq!(r.mean_dstar, None);
        assert_eq!(cumulative_capital(&r), 0.0);
        assert_eq!(
            entry_path_distance(&g, NodeId(0)),
            Ok(SocialDistance::Unreachable)
        );
    }

    #[test]
    fn direct_bridge() {
        let g = CommunityGraph::build(2, 1, [(0, 2)]).unwrap();
        assert_eq!(
            entry_path_distance(&g, NodeId(0)),
            Ok(SocialDistance::Reachable(1))
        );
        let s = count_entry_paths(&g, NodeId(0), 3, DEFAULT_EXPANSION_BUDGET).unwrap();
        assert_eq!(s.counts, vec![1, 0, 0]);
    }

    #[test]
    fn errors() {
        let g = CommunityGraph::build(2, 0, [(0, 1)]).unwrap();
        assert_eq!(social_distances(&g), Err(MetricsError::NoFcNodes));
        let g = CommunityGraph::build(2, 1, [(0, 2)]).unwrap();
        assert_eq!(
            entry_path_distance(&g, NodeId(2)),
            Err(MetricsError::NotBcNode(2))
        );
        assert_eq!(
            count_entry_paths(&g, NodeId(0), 0, 10),
            Err(MetricsError::ZeroLength)
        );
        let k = complete(7, 2);
        assert_eq!(
            count_entry_paths(&k, NodeId(0), 7, 50),
            Err(MetricsError::BudgetExceeded(50))
        );
    }

    #[test]
    fn capital_values() {
        let r = SocialDistanceReport::from_distances(vec![
            SocialDistance::Reachable(1),
            SocialDistance::Reachable(2),
            SocialDistance::Reachable(4),
        ]);
        assert_eq!(r.cumulative_capital, 1.75);
        let all_one = SocialDistanceReport::from_distances(vec![SocialDistance::Reachable(1); 9]);
        assert_eq!(all_one.cumulative_capital, 9.0);
    }

    #[test]
    fn complete_four_two() {
        let g = complete(4, 2);
        let s = count_entry_paths(&g, NodeId(0), 3, DEFAULT_EXPANSION_BUDGET).unwrap();
        assert_eq!(s.count(1), 2);
        assert_eq!(s.count(2), 6);
        assert_eq!(s.count(3), 12);
    }

    #[test]
    fn short_horizon_counts_nothing() {
        let g = CommunityGraph::build(3, 1, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = count_entry_paths(&g, NodeId(0), 2, DEFAULT_EXPANSION_BUDGET).unwrap();
        assert_eq!(s.counts, vec![0, 0]);
        assert_eq!(s.shortest(), None);
    }
}
