//! Moment matrices and recurrence verdicts for the three planar embeddings of
//! `D = [[0,1],[2,1]]` under uniform rotors.
//!
//! cargo run --example classify_embeddings

use rotorwalk::analysis::{classify, moment_matrix, Rational, RotorDistributionFamily, Tolerances};
use rotorwalk::base_graph::catalog;

fn main() -> rotorwalk::Result<()> {
    for (name, g) in [
        ("(2,1,1)", catalog::embedding_a()),
        ("(1,2,1)", catalog::embedding_b()),
        ("(1,1,2)", catalog::embedding_c()),
    ] {
        let dists = RotorDistributionFamily::<Rational>::uniform(&g);
        let m = moment_matrix(&g, &dists);
        let r = classify(&g, &dists, Tolerances::default())?;
        println!(
            "chi_2 = {name}: M = {:?}, rho = {:.10}, {:?}{}",
            m.render(),
            r.spectral_radius,
            r.verdict,
            if r.critical { " (critical)" } else { "" }
        );
    }
    Ok(())
}
