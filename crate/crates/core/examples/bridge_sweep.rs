//! Sweeps the bridge count, writes the results as CSV and an SVG plot.
//!
//! ```bash
//! cargo run --release -p bridgegap --example bridge_sweep [out_dir]
//! ```

use std::path::PathBuf;

use bridgegap::experiments::{run_sweep, ConnectivityPolicy, SweepConfig};
use bridgegap::generators::Substrate;
use bridgegap::plot::sweep_plot;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let config = SweepConfig {
        n1: 10_000,
        p1: 1e-3,
        n2: 1_000,
        p2: 0.01,
        substrate: Substrate::Er,
        x_values: vec![1, 3, 10, 30, 100, 300, 1_000],
        trials: 10,
        seed: 0,
        connectivity_policy: ConnectivityPolicy::Record,
    };
    let result = run_sweep(&config)?;
    print!("{}", result.to_csv());

    let csv = out_dir.join("bridge_sweep.csv");
    let svg = out_dir.join("bridge_sweep.svg");
    std::fs::write(&csv, result.to_csv())?;
    std::fs::write(&svg, sweep_plot(&result).render())?;
    println!("wrote {} and {}", csv.display(), svg.display());
    println!("upward steps in mean d*: {}", result.monotone_violations());
    Ok(())
}
