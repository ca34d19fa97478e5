//! Fraction of connected G(n, p) graphs as p crosses ln(n)/n.
//!
//! ```bash
//! cargo run --release -p bridgegap --example connectivity_transition
//! ```

use bridgegap::experiments::run_connectivity_transition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 1_000;
    let multipliers = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0];
    let rows = run_connectivity_transition(n, &multipliers, 100, 0)?;
    println!("n = {n}, threshold ln(n)/n = {:.6}", (n as f64).ln() / n as f64);
    println!("{:>6} {:>10} {:>10}", "c", "p", "connected");
    for r in rows {
        let bar = "#".repeat((r.connected_fraction * 40.0).round() as usize);
        println!("{:>6} {:>10.6} {:>10.2} {bar}", r.multiplier, r.p, r.connected_fraction);
    }
    Ok(())
}
