//! Undirected two-community graph.
//!
//! Nodes `0..n1` form the backward community (BC, `V1`) and nodes
//! `n1..n1+n2` form the forward community (FC, `V2`). Because the partition is
//! a contiguous split of the index range, the class of an edge is a function
//! of its endpoint indices and no per-node labels are stored.
//!
//! Adjacency is held in compressed sparse row form with every neighbor list
//! sorted ascending. The graph is immutable once built and can be shared
//! across threads freely.

use std::fmt;

use thiserror::Error;

/// Index of a node. BC nodes occupy the low range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which community a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Community {
    /// Backward community, `V1`.
    Bc,
    /// Forward community, `V2`.
    Fc,
}

/// The three disjoint edge classes `E1`, `E2` and `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Intra1,
    Intra2,
    Bridge,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a node outside 0..{n}")]
    IndexOutOfRange { u: u32, v: u32, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(u32, u32),
    #[error("connectivity query over an empty node subset")]
    EmptySubset,
    #[error("graph has {0} nodes, more than a 32-bit node index can address")]
    TooManyNodes(usize),
}

/// Per-class edge tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EdgeCounts {
    pub intra1: usize,
    pub intra2: usize,
    pub bridges: usize,
}

impl EdgeCounts {
    pub fn total(&self) -> usize {
        self.intra1 + self.intra2 + self.bridges
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityGraph {
    n1: usize,
    n2: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    counts: EdgeCounts,
}

impl CommunityGraph {
    /// Builds a graph from an undirected edge list.
    ///
    /// Each pair may be given in either orientation. Self-loops, out of range
    /// endpoints and repeated pairs (in any orientation) are rejected.
    pub fn build<I>(n1: usize, n2: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let n = n1 + n2;
        if n > u32::MAX as usize {
            return Err(GraphError::TooManyNodes(n));
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::IndexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            pairs.push(if u < v { (u, v) } else { (v, u) });
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut degree = vec![0usize; n];
        let mut counts = EdgeCounts::default();
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            match class_of(n1, u, v) {
                EdgeClass::Intra1 => counts.intra1 += 1,
                EdgeClass::Intra2 => counts.intra2 += 1,
                EdgeClass::Bridge => counts.bridges += 1,
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0u32; 2 * pairs.len()];
        // Two passes over the sorted pairs: lower neighbors first, then
        // higher ones, which leaves every list ascending.
        for &(u, v) in &pairs {
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for &(u, v) in &pairs {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
        }

        Ok(CommunityGraph {
            n1,
            n2,
            offsets,
            neighbors,
            counts,
        })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn node_count(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn edge_counts(&self) -> EdgeCounts {
        self.counts
    }

    pub fn community(&self, node: NodeId) -> Community {
        if node.index() < self.n1 {
            Community::Bc
        } else {
            Community::Fc
        }
    }

    #[inline]
    pub fn is_bc(&self, node: u32) -> bool {
        (node as usize) < self.n1
    }

    /// Sorted neighbor list of `node`.
    #[inline]
    pub fn neighbors(&self, node: NodeId) -> &[u32] {
        let i = node.index();
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        let i = node.index();
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        if u.index() >= self.node_count() || v.index() >= self.node_count() {
            return false;
        }
        self.neighbors(u).binary_search(&v.0).is_ok()
    }

    /// Every edge once as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.node_count() as u32).flat_map(move |u| {
            self.neighbors(NodeId(u))
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn bc_nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.n1 as u32).map(NodeId)
    }

    pub fn fc_nodes(&self) -> impl Iterator<Item = NodeId> {
        (self.n1 as u32..(self.n1 + self.n2) as u32).map(NodeId)
    }

    pub fn classify_edge(&self, u: NodeId, v: NodeId) -> Result<EdgeClass, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u.0, v.0));
        }
        Ok(class_of(self.n1, u.0, v.0))
    }

    /// Whether the subgraph induced by `restrict` (or the whole graph) is
    /// connected. The empty graph on zero nodes counts as connected; an
    /// explicitly empty subset is an error.
    pub fn is_connected(&self, restrict: Option<&[NodeId]>) -> Result<bool, GraphError> {
        let n = self.node_count();
        let mut member = match restrict {
            None => {
                if n <= 1 {
                    return Ok(true);
                }
                vec![true; n]
            }
            Some(subset) => {
                if subset.is_empty() {
                    return Err(GraphError::EmptySubset);
                }
                let mut m = vec![false; n];
                for node in subset {
                    if node.index() >= n {
                        return Err(GraphError::IndexOutOfRange {
                            u: node.0,
                            v: node.0,
                            n,
                        });
                    }
                    m[node.index()] = true;
                }
                m
            }
        };
        let target = member.iter().filter(|&&b| b).count();
        let start = member.iter().position(|&b| b).unwrap();
        // Reuse `member` as the unvisited mask.
        member[start] = false;
        let mut stack = vec![start as u32];
        let mut seen = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(NodeId(u)) {
                if member[v as usize] {
                    member[v as usize] = false;
                    seen += 1;
                    stack.push(v);
                }
            }
        }
        Ok(seen == target)
    }

    /// Connectivity of the subgraph induced by one community. An empty
    /// community is reported as connected.
    pub fn is_block_connected(&self, community: Community) -> bool {
        let nodes: Vec<NodeId> = match community {
            Community::Bc => self.bc_nodes().collect(),
            Community::Fc => self.fc_nodes().collect(),
        };
        if nodes.is_empty() {
            return true;
        }
        self.is_connected(Some(&nodes)).expect("nonempty in-range subset")
    }
}

/// Class of the pair `{u, v}` under the index partition at `n1`.
#[inline]
pub fn class_of(n1: usize, u: u32, v: u32) -> EdgeClass {
    match ((u as usize) < n1, (v as usize) < n1) {
        (true, true) => EdgeClass::Intra1,
        (false, false) => EdgeClass::Intra2,
        _ => EdgeClass::Bridge,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_classifies_by_partition() {
        let g = CommunityGraph::build(2, 1, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(
            g.edge_counts(),
            EdgeCounts {
                intra1: 1,
                intra2: 0,
                bridges: 1
            }
        );
    }

    #[test]
    fn empty_graph() {
        let g = CommunityGraph::build(1, 1, []).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            CommunityGraph::build(2, 1, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            CommunityGraph::build(2, 1, [(0, 3)]),
            Err(GraphError::IndexOutOfRange { u: 0, v: 3, n: 3 })
        );
        assert_eq!(
            CommunityGraph::build(2, 1, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
    }

    #[test]
    fn classify() {
        let g = CommunityGraph::build(3, 2, [(0, 2), (1, 4), (3, 4)]).unwrap();
        assert_eq!(g.classify_edge(NodeId(0), NodeId(2)), Ok(EdgeClass::Intra1));
        assert_eq!(g.classify_edge(NodeId(4), NodeId(1)), Ok(EdgeClass::Bridge));
        assert_eq!(g.classify_edge(NodeId(3), NodeId(4)), Ok(EdgeClass::Intra2));
        assert_eq!(
            g.classify_edge(NodeId(0), NodeId(1)),
            Err(GraphError::NotAnEdge(0, 1))
        );
    }

    #[test]
    fn neighbor_lists_sorted() {
        let g = CommunityGraph::build(5, 0, [(4, 2), (2, 0), (3, 2), (2, 1)]).unwrap();
        assert_eq!(g.neighbors(NodeId(2)), &[0, 1, 3, 4]);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 2), (1, 2), (2, 3), (2, 4)]);
    }

    #[test]
    fn connectivity() {
        let path = CommunityGraph::build(3, 0, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.is_connected(None), Ok(true));
        let isolated = CommunityGraph::build(2, 0, []).unwrap();
        assert_eq!(isolated.is_connected(None), Ok(false));
        // BC spanning tree, FC attached only through a bridge
        let g = CommunityGraph::build(3, 2, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let bc: Vec<_> = g.bc_nodes().collect();
        assert_eq!(g.is_connected(Some(&bc)), Ok(true));
        assert!(!g.is_block_connected(Community::Fc));
        assert_eq!(g.is_connected(Some(&[])), Err(GraphError::EmptySubset));
    }
}
