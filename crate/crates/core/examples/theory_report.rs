//! Prints the closed-form predictions: social distance against bridge count,
//! the candidate path counts and the connectivity threshold.
//!
//! ```bash
//! cargo run -p bridgegap --example theory_report
//! ```

use bridgegap::theory::{social_distance_law, stirling_ratio, TheoryInputs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n1, n2, p1) = (10_000u64, 1_000u64, 1e-3);
    println!("n1 = {n1}, n2 = {n2}, n1 p1 = {}", n1 as f64 * p1);
    println!("{:>6} {:>10} {:>10}", "x", "d0", "d0 + 1");
    for x in [1.0, 3.0, 10.0, 30.0, 100.0, 1_000.0, 10_000.0] {
        let r = social_distance_law(&TheoryInputs::with_count(n1, n2, p1, x))?;
        let flag = if r.saturated { "  (saturated)" } else { "" };
        println!("{x:>6} {:>10.4} {:>10.4}{flag}", r.d0, r.predicted_dstar);
    }

    let r = social_distance_law(&TheoryInputs::with_count(n1, n2, p1, 10.0))?;
    println!("\nat x = 10:");
    for (l, e) in &r.expected_xl {
        println!("  E[X_{l}] = {:.4} (approx {:.4})", e.exact, e.approx);
    }
    println!("  connectivity threshold p0 = {:.6}", r.connectivity_threshold_p0);

    println!("\n(n)_l / n^l at l = 10:");
    for k in 3..=6 {
        let n = 10u64.pow(k);
        println!("  n = 10^{k}: {:.8}", stirling_ratio(n, 10)?);
    }
    Ok(())
}
