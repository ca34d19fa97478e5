//! Generates one two-block graph and reports the social distance of every BC
//! node to the FC block.
//!
//! ```bash
//! cargo run --release -p bridgegap --example generate_and_measure
//! ```

use bridgegap::generators::{gen_model, BridgeSpec, ModelParams};
use bridgegap::metrics::social_distances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = ModelParams {
        n1: 2_000,
        p1: 0.005,
        n2: 500,
        p2: 0.02,
        bridges: BridgeSpec::Count(20),
        seed: 42,
    };
    let g = gen_model(&params)?;
    let c = g.edge_counts();
    println!("E1 = {}, E2 = {}, B = {}", c.intra1, c.intra2, c.bridges);
    println!("BC block connected: {}", g.is_block_connected(bridgegap::graph::Community::Bc));

    let report = social_distances(&g)?;
    match report.mean_dstar {
        Some(m) => println!("mean d* = {m:.3}"),
        None => println!("no BC node reaches the FC block"),
    }
    println!("unreachable BC nodes: {}", report.unreachable_count);
    println!("cumulative capital: {:.2}", report.cumulative_capital);
    println!("d* histogram:");
    for (d, count) in &report.histogram {
        println!("  {d:>11}  {count}");
    }
    Ok(())
}
