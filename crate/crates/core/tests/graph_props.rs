use bridgegap::edgelist;
use bridgegap::graph::{class_of, CommunityGraph, EdgeClass, NodeId};
use proptest::prelude::*;

/// Random simple graph as (n1, n2, edge list).
fn arb_graph() -> impl Strategy<Value = (usize, usize, Vec<(u32, u32)>)> {
    (1usize..25, 0usize..25).prop_flat_map(|(n1, n2)| {
        let n = (n1 + n2) as u32;
        let pairs = proptest::collection::btree_set((0..n, 0..n), 0..80).prop_map(|set| {
            let mut seen = std::collections::BTreeSet::new();
            set.into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .filter(|p| seen.insert(*p))
                .collect::<Vec<_>>()
        });
        (Just(n1), Just(n2), pairs)
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip((n1, n2, edges) in arb_graph()) {
        let g = CommunityGraph::build(n1, n2, edges).unwrap();
        let text = edgelist::to_string(&g);
        let back = edgelist::from_str(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(edgelist::to_string(&back), text);
    }

    #[test]
    fn structural_invariants((n1, n2, edges) in arb_graph()) {
        let g = CommunityGraph::build(n1, n2, edges.clone()).unwrap();
        prop_assert_eq!(g.edge_count(), edges.len());

        let degree_sum: usize = (0..g.node_count() as u32).map(|u| g.degree(NodeId(u))).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());

        let (mut e1, mut e2, mut b) = (0, 0, 0);
        for (u, v) in g.edges() {
            prop_assert!(u < v);
            prop_assert!(g.neighbors(NodeId(v)).contains(&u));
            let class = g.classify_edge(NodeId(u), NodeId(v)).unwrap();
            prop_assert_eq!(class, class_of(n1, u, v));
            match class {
                EdgeClass::Intra1 => e1 += 1,
                EdgeClass::Intra2 => e2 += 1,
                EdgeClass::Bridge => b += 1,
            }
        }
        let c = g.edge_counts();
        prop_assert_eq!((c.intra1, c.intra2, c.bridges), (e1, e2, b));
        prop_assert_eq!(c.total(), g.edge_count());

        for u in 0..g.node_count() as u32 {
            let ns = g.neighbors(NodeId(u));
            prop_assert!(ns.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!ns.contains(&u));
        }
    }

    #[test]
    fn orientation_does_not_matter((n1, n2, edges) in arb_graph()) {
        let flipped: Vec<_> = edges.iter().rev().map(|&(u, v)| (v, u)).collect();
        prop_assert_eq!(
            CommunityGraph::build(n1, n2, edges).unwrap(),
            CommunityGraph::build(n1, n2, flipped).unwrap()
        );
    }
}

#[test]
fn edge_list_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.el");
    let g = CommunityGraph::build(3, 2, [(0, 1), (1, 3), (3, 4)]).unwrap();
    edgelist::write_file(&g, &path).unwrap();
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "# bridgegap-graph v1\n# n1=3 n2=2\n0 1\n1 3\n3 4\n"
    );
    assert_eq!(edgelist::read_file(&path).unwrap(), g);
}
