//! Survival of the good-children branching process next to the frequency of
//! good paths on sampled rotor configurations.
//!
//! cargo run --release --example mbp_survival

use rotorwalk::analysis::{mbp_survival_estimate, RotorDistributionFamily};
use rotorwalk::base_graph::catalog;
use rotorwalk::rotor::lazy_good_path_frequency;

fn main() -> rotorwalk::Result<()> {
    for (name, g) in [("(2,1,1)", catalog::embedding_a()), ("(1,1,2)", catalog::embedding_c())] {
        let dists = RotorDistributionFamily::<f64>::uniform(&g);
        let mbp = mbp_survival_estimate(&g, &dists, 30, 10_000, 1)?;
        for root in g.types() {
            let est = &mbp[root.index()];
            let paths = lazy_good_path_frequency(&g, &dists, root, 30, 10_000, 2)?;
            println!(
                "{name} type {root}: branching {:.4} ± {:.4}, good paths {:.4} ± {:.4}",
                est.frequency, est.half_width, paths.frequency, paths.half_width
            );
        }
    }
    Ok(())
}
