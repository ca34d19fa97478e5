//! Runs every acceptance check and reports its wall time against the budget.
//!
//! ```bash
//! cargo run --release -p bridgegap --example validation_suite
//! ```

use std::time::Instant;

use bridgegap::validate::Check;

fn main() {
    for check in Check::ALL {
        let start = Instant::now();
        let outcome = check.run(0);
        let elapsed = start.elapsed();
        println!("{outcome}");
        println!(
            "      {:.2}s of {}s budget",
            elapsed.as_secs_f64(),
            check.budget().as_secs()
        );
    }
}
