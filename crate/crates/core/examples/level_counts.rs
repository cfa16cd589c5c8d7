//! `w(n) = D^n` for the Fibonacci graph, checked against a built cover.
//!
//! cargo run --example level_counts

use rotorwalk::analysis::level_counts;
use rotorwalk::base_graph::{catalog, TypeId};
use rotorwalk::tree::build_cover;

fn main() -> rotorwalk::Result<()> {
    let g = catalog::fibonacci();
    let root = TypeId::new(2);
    let tree = build_cover(&g, root, 10)?;
    for n in 0..=10 {
        let w = level_counts(&g, n);
        println!("n={n:>2}  w = {:?}  level size = {}  census = {:?}", w.to_strings(), w.total(root), tree.level_census(n, 2));
    }
    println!("w(100) total from type 2: {}", level_counts(&g, 100).total(root));
    Ok(())
}
