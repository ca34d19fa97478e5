//! Tabulates same-group ties in the bundled friendship survey, or in a CSV
//! given on the command line.
//!
//! ```bash
//! cargo run -p bridgegap --example survey_table [survey.csv]
//! ```

use bridgegap::survey::{bundled_sample, homophily_distribution, load_survey};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = match std::env::args().nth(1) {
        Some(path) => load_survey(path)?,
        None => bundled_sample(),
    };
    let dist = homophily_distribution(&records)?;
    print!("{}", dist.to_table());
    println!("\n{}", serde_json::to_string_pretty(&dist.to_json())?);
    Ok(())
}
