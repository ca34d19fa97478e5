//! Counts the simple entry paths from one BC node into the FC block and sets
//! them against the complete-graph formula and the random-graph expectation.
//!
//! ```bash
//! cargo run --release -p bridgegap --example entry_paths
//! ```

use bridgegap::generators::{gen_model, BridgeSpec, ModelParams};
use bridgegap::metrics::{count_entry_paths, entry_path_distance, DEFAULT_EXPANSION_BUDGET};
use bridgegap::theory::{expected_entry_paths, m_l, TheoryInputs};
use bridgegap::{CommunityGraph, NodeId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Complete graph on 5 + 3 nodes: every candidate path is present.
    let (n1, n2) = (5u32, 3u32);
    let edges = (0..n1 + n2).flat_map(|u| (u + 1..n1 + n2).map(move |v| (u, v)));
    let complete = CommunityGraph::build(n1 as usize, n2 as usize, edges)?;
    let stats = count_entry_paths(&complete, NodeId(0), n1, DEFAULT_EXPANSION_BUDGET)?;
    println!("complete graph, n1 = {n1}, n2 = {n2}");
    for l in 1..=n1 {
        let formula = m_l(n1 as u64, n2 as u64, l as u64)?.exact;
        println!("  l = {l}: counted {:>4}, formula {formula:>6.0}", stats.count(l));
    }

    let (n1, p1, n2, b) = (400, 0.02, 50, 0.001);
    let g = gen_model(&ModelParams {
        n1,
        p1,
        n2,
        p2: 0.1,
        bridges: BridgeSpec::Prob(b),
        seed: 11,
    })?;
    let source = NodeId(0);
    let stats = count_entry_paths(&g, source, 4, DEFAULT_EXPANSION_BUDGET)?;
    let inputs = TheoryInputs::with_prob(n1 as u64, n2 as u64, p1, b);
    println!("\nrandom graph, source {source:?}, d* = {}", entry_path_distance(&g, source)?);
    for l in 1..=4 {
        let e = expected_entry_paths(&inputs, l as u64)?;
        println!(
            "  l = {l}: counted {:>4}, E[X_l] exact {:>8.3}, approx {:>8.3}",
            stats.count(l),
            e.exact,
            e.approx
        );
    }
    println!("  DFS expansions: {}", stats.expansions);
    Ok(())
}
