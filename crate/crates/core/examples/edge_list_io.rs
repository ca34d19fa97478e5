//! Writes a generated graph in the edge-list format, reads it back and checks
//! that nothing changed.
//!
//! ```bash
//! cargo run -p bridgegap --example edge_list_io
//! ```

use bridgegap::edgelist;
use bridgegap::generators::{gen_model, BridgeSpec, ModelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_model(&ModelParams {
        n1: 12,
        p1: 0.3,
        n2: 5,
        p2: 0.5,
        bridges: BridgeSpec::Prob(0.05),
        seed: 3,
    })?;

    let text = edgelist::to_string(&g);
    println!("{text}");

    let path = std::env::temp_dir().join("bridgegap_example.el");
    edgelist::write_file(&g, &path)?;
    let back = edgelist::read_file(&path)?;
    assert_eq!(back, g);
    println!("round trip through {} preserved all {} edges", path.display(), g.edge_count());

    for bad in ["# bridgegap-graph v1\n# n1=2 n2=1\n0 0\n", "# bridgegap-graph v1\n# n1=2 n2=1\n0 7\n"] {
        println!("rejected: {}", edgelist::from_str(bad).unwrap_err());
    }
    std::fs::remove_file(path)?;
    Ok(())
}
