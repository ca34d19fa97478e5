//! Monte Carlo check that entry path counts concentrate around their
//! expectation and that d* rarely exceeds d0 + 1.
//!
//! ```bash
//! cargo run --release -p bridgegap --example concentration
//! ```

use bridgegap::experiments::{run_concentration, ConcentrationConfig};
use bridgegap::theory::expected_entry_paths;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n1, n2) = (1_000, 100);
    let config = ConcentrationConfig::new(n1, 10.0 / n1 as f64, n2, 0.2 / n2 as f64, 500, 7);
    let result = run_concentration(&config)?;
    let inputs = config.theory_inputs();

    println!("d0 = {:.4}, counting paths up to l = {}", result.d0.unwrap_or(f64::NAN), result.max_length);
    println!("{:>3} {:>10} {:>10} {:>10} {:>10}", "l", "mean", "se", "E[X_l]", "P(X_l>0)");
    for s in &result.per_length {
        let e = expected_entry_paths(&inputs, s.length as u64)?.exact;
        println!(
            "{:>3} {:>10.4} {:>10.4} {:>10.4} {:>10.3}",
            s.length, s.mean, s.std_error, e, s.fraction_nonzero
        );
    }
    println!("P(d* <= {}) = {:.3}", result.max_length, result.fraction_within);
    Ok(())
}
