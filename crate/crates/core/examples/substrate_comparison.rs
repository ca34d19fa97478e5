//! Runs the same bridge sweep on ER and preferential-attachment blocks and
//! plots both curves.
//!
//! ```bash
//! cargo run --release -p bridgegap --example substrate_comparison [out_dir]
//! ```

use std::path::PathBuf;

use bridgegap::experiments::{run_substrate_comparison, SweepConfig};
use bridgegap::plot::comparison_plot;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let config = SweepConfig::default_comparison();
    let result = run_substrate_comparison(&config)?;

    println!("{:>6} {:>10} {:>10}", "x", "ER d*", "SF d*");
    for (er, sf) in result.er.rows.iter().zip(&result.scale_free.rows) {
        println!("{:>6} {:>10.3} {:>10.3}", er.x, er.mean_dstar, sf.mean_dstar);
    }
    println!("max divergence {:.3}", result.max_divergence);
    println!(
        "non-increasing: ER {}, scale-free {}",
        result.er_non_increasing, result.scale_free_non_increasing
    );

    let svg = out_dir.join("substrate_comparison.svg");
    std::fs::write(&svg, comparison_plot(&result).render())?;
    println!("wrote {}", svg.display());
    Ok(())
}
