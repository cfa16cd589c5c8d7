//! Transfinite rotor-router runs: transient `(1,1,2)` embedding against the
//! escape probability, and the recurrent binary tree over a height sweep.
//!
//! cargo run --release --example transfinite_simulation

use rotorwalk::analysis::{escape_probabilities, RotorDistributionFamily};
use rotorwalk::base_graph::{catalog, BaseGraph, TypeId};
use rotorwalk::rotor::{height_sweep, run_transfinite, sample_config, RotorSampler};
use rotorwalk::tree::build_cover;

fn main() -> rotorwalk::Result<()> {
    let g = catalog::embedding_c();
    let root = TypeId::new(2);
    let e = escape_probabilities(&g, 1e-13, 100_000)?[root.index()];
    let tree = build_cover(&g, root, 14)?;
    let sampler = RotorSampler::new(&g, &RotorDistributionFamily::<f64>::uniform(&g))?;
    println!("(1,1,2) embedding, h=14, escape probability {e:.6}");
    for seed in 1..=5 {
        let mut config = sample_config(&tree, &sampler, seed);
        let report = run_transfinite(&tree, &mut config, 1000)?;
        println!("  seed {seed}: E_1000 = {}, ratio {:.4}", report.escaped(), report.ratio);
    }

    let binary = BaseGraph::homogeneous(2);
    let dists = RotorDistributionFamily::<f64>::uniform(&binary);
    let heights: Vec<u32> = (4..=18).step_by(2).collect();
    println!("binary tree, n=10");
    for seed in 1..=3 {
        let sweep = height_sweep(&binary, &dists, TypeId::new(1), &heights, 10, seed)?;
        let row: Vec<String> = sweep.reports.iter().map(|r| format!("h{}:{}", r.height, r.escaped())).collect();
        println!("  seed {seed}: {}", row.join(" "));
    }
    Ok(())
}
