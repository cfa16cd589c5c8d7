//! Loading an experiment from JSON and running commands on it directly.
//!
//! cargo run --example custom_graph -- crates/core/configs/embedding_c.json

use rotorwalk::cli::{cmd_classify, cmd_escape, parse_config};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => r#"{"m":3, "children":[[2,3],[3,1],[1,2,2]], "dists":"uniform", "root":1}"#.to_string(),
    };
    let config = parse_config(&text)?;
    let classified = cmd_classify(&config)?;
    let escape = cmd_escape(&config)?;
    println!("M = {}", classified.report["moment_matrix"]);
    println!("rho = {}, verdict {}", classified.report["spectral_radius"], classified.report["verdict"]);
    println!("escape probabilities {}", escape.report["escape_probabilities"]);
    Ok(())
}
