//! Social distance and entry path counts against brute-force oracles.

use bridgegap::generators::{gen_model, BridgeSpec, ModelParams};
use bridgegap::graph::{CommunityGraph, NodeId};
use bridgegap::metrics::{
    count_entry_paths, entry_path_distance, social_distances, SocialDistance,
    DEFAULT_EXPANSION_BUDGET,
};
use bridgegap::theory::m_l;
use proptest::prelude::*;

/// All-pairs shortest paths by Floyd–Warshall, then the minimum over FC.
fn floyd_social_distance(g: &CommunityGraph) -> Vec<SocialDistance> {
    let n = g.node_count();
    let inf = u32::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    (0..g.n1())
        .map(|u| {
            let best = (g.n1()..n).map(|v| d[u][v]).min().unwrap_or(inf);
            if best >= inf {
                SocialDistance::Unreachable
            } else {
                SocialDistance::Reachable(best)
            }
        })
        .collect()
}

/// Entry path counts by listing every injective sequence of BC nodes that
/// starts at `u`, without adjacency pruning, and keeping the valid ones.
fn brute_force_counts(g: &CommunityGraph, u: u32, max_len: usize) -> Vec<u64> {
    fn rec(g: &CommunityGraph, seq: &mut Vec<u32>, max_len: usize, counts: &mut [u64]) {
        let valid = seq.windows(2).all(|w| g.has_edge(NodeId(w[0]), NodeId(w[1])));
        if !valid {
            return;
        }
        let last = *seq.last().unwrap();
        let fc_neighbors = g.fc_nodes().filter(|&w| g.has_edge(NodeId(last), w)).count();
        counts[seq.len() - 1] += fc_neighbors as u64;
        if seq.len() == max_len {
            return;
        }
        for v in 0..g.n1() as u32 {
            if !seq.contains(&v) {
                seq.push(v);
                rec(g, seq, max_len, counts);
                seq.pop();
            }
        }
    }
    let mut counts = vec![0; max_len];
    rec(g, &mut vec![u], max_len, &mut counts);
    counts
}

fn complete(n1: u32, n2: u32) -> CommunityGraph {
    let edges = (0..n1).flat_map(|a| (a + 1..n1 + n2).map(move |b| (a, b)));
    CommunityGraph::build(n1 as usize, n2 as usize, edges).unwrap()
}

#[test]
fn complete_block_counts_match_closed_form() {
    for n1 in 1..=7u32 {
        for n2 in 1..=3u32 {
            let g = complete(n1, n2);
            let s = count_entry_paths(&g, NodeId(0), n1, DEFAULT_EXPANSION_BUDGET).unwrap();
            for l in 1..=n1 {
                let closed: u64 = (1..l as u64).fold(n2 as u64, |acc, i| acc * (n1 as u64 - i));
                assert_eq!(s.count(l), closed, "n1={n1} n2={n2} l={l}");
                assert!((m_l(n1 as u64, n2 as u64, l as u64).unwrap().exact - closed as f64).abs() < 1e-6);
            }
        }
    }
    let four_two = count_entry_paths(&complete(4, 2), NodeId(0), 3, DEFAULT_EXPANSION_BUDGET).unwrap();
    assert_eq!(four_two.count(2), 6);
    assert_eq!(brute_force_counts(&complete(4, 2), 0, 3), vec![2, 6, 12]);
}

#[test]
fn hand_built_star() {
    // Source 0 with one bridge and no BC neighbours.
    let g = CommunityGraph::build(3, 2, [(0, 3), (1, 2), (2, 4)]).unwrap();
    let s = count_entry_paths(&g, NodeId(0), 4, DEFAULT_EXPANSION_BUDGET).unwrap();
    assert_eq!(s.counts, vec![1, 0, 0, 0]);
}

fn small_model() -> impl Strategy<Value = ModelParams> {
    (1usize..9, 1usize..5, 0.0f64..0.7, 0.0f64..0.5, 0.0f64..0.3, any::<u64>()).prop_map(
        |(n1, n2, p1, p2, b, seed)| ModelParams {
            n1,
            p1,
            n2,
            p2,
            bridges: BridgeSpec::Prob(b),
            seed,
        },
    )
}

fn medium_model() -> impl Strategy<Value = ModelParams> {
    (1usize..120, 1usize..60, 0.0f64..0.1, 0.0f64..0.2, prop_oneof![Just(0.0), Just(0.01), Just(0.1), Just(1.0)], any::<u64>())
        .prop_map(|(n1, n2, p1, p2, b, seed)| ModelParams {
            n1,
            p1,
            n2,
            p2,
            bridges: BridgeSpec::Prob(b),
            seed,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bfs_routes_agree_with_floyd(params in medium_model()) {
        let g = gen_model(&params).unwrap();
        let report = social_distances(&g).unwrap();
        if g.node_count() <= 90 {
            prop_assert_eq!(&report.per_node, &floyd_social_distance(&g));
        }
        for u in g.bc_nodes() {
            prop_assert_eq!(entry_path_distance(&g, u).unwrap(), report.per_node[u.index()]);
        }
        let reachable: Vec<u32> = report.per_node.iter().filter_map(|d| d.hops()).collect();
        prop_assert!(reachable.iter().all(|&d| d >= 1));
        prop_assert_eq!(reachable.len() + report.unreachable_count, g.n1());
    }

    #[test]
    fn enumeration_matches_brute_force(params in small_model(), lmax in 1u32..6) {
        let g = gen_model(&params).unwrap();
        let u = NodeId(0);
        let s = count_entry_paths(&g, u, lmax, DEFAULT_EXPANSION_BUDGET).unwrap();
        prop_assert_eq!(&s.counts, &brute_force_counts(&g, 0, lmax as usize));
        // The first nonzero count sits at the shortest entry path length.
        match entry_path_distance(&g, u).unwrap() {
            SocialDistance::Reachable(d) if d <= lmax => prop_assert_eq!(s.shortest(), Some(d)),
            _ => prop_assert_eq!(s.shortest(), None),
        }
    }

    #[test]
    fn adding_a_bridge_never_hurts(params in medium_model(), pick: (u32, u32)) {
        let g = gen_model(&params).unwrap();
        let before = social_distances(&g).unwrap();
        let u = pick.0 % g.n1() as u32;
        let v = g.n1() as u32 + pick.1 % g.n2() as u32;
        prop_assume!(!g.has_edge(NodeId(u), NodeId(v)));
        let g2 = CommunityGraph::build(g.n1(), g.n2(), g.edges().chain([(u, v)])).unwrap();
        let after = social_distances(&g2).unwrap();
        for (a, b) in after.per_node.iter().zip(&before.per_node) {
            // Unreachable orders above every Reachable value.
            prop_assert!(a <= b);
        }
        prop_assert!(after.cumulative_capital >= before.cumulative_capital);
    }
}
