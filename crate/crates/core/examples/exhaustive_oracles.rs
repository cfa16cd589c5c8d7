//! Exhaustive checks on small wired covers: first-particle escape versus good
//! paths, schedule independence, and the particle counts needed to hit
//! every leaf.
//!
//! cargo run --release --example exhaustive_oracles

use rotorwalk::base_graph::{catalog, TypeId};
use rotorwalk::rotor::{abelian_check, enumerate_configs, first_particle_oracle, n_bound_search, Schedule};
use rotorwalk::tree::build_cover;

fn main() -> rotorwalk::Result<()> {
    let g = catalog::fibonacci();
    let root = TypeId::new(2);
    let tree = build_cover(&g, root, 3)?;
    let tally = first_particle_oracle(&tree)?;
    println!("first particle: {}/{} configurations agree", tally.passed, tally.total);

    let schedules = [Schedule::RoundRobin, Schedule::DeepestFirst, Schedule::ShallowestFirst, Schedule::Random(9)];
    let mut agree = 0;
    for config in enumerate_configs(&tree)? {
        agree += abelian_check(&tree, &config, 5, &schedules)? as u64;
    }
    println!("abelian, 5 particles: {agree}/{} configurations", tally.total);

    for g in [catalog::fibonacci(), catalog::embedding_c()] {
        for root in g.types() {
            let n1 = n_bound_search(&build_cover(&g, root, 1)?)?;
            let n2 = n_bound_search(&build_cover(&g, root, 2)?)?;
            println!("{:?} root {root}: n(1) = {n1}, n(2) = {n2}", g.to_labels());
        }
    }
    Ok(())
}
