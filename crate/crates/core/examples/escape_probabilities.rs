//! Simple-random-walk escape probabilities: the fixed point next to Monte
//! Carlo estimates on truncated covers.
//!
//! cargo run --release --example escape_probabilities

use rotorwalk::analysis::{escape_probabilities, escape_residual, DEFAULT_ESCAPE_TOL, DEFAULT_MAX_ITERS};
use rotorwalk::base_graph::{catalog, BaseGraph, TypeId};
use rotorwalk::srw::srw_escape_estimate;
use rotorwalk::tree::build_cover;

fn main() -> rotorwalk::Result<()> {
    for (name, g, root) in [
        ("half-line", BaseGraph::homogeneous(1), TypeId::new(1)),
        ("binary", BaseGraph::homogeneous(2), TypeId::new(1)),
        ("ternary", BaseGraph::homogeneous(3), TypeId::new(1)),
        ("fibonacci", catalog::fibonacci(), TypeId::new(2)),
        ("embedding (1,1,2)", catalog::embedding_c(), TypeId::new(2)),
    ] {
        let e = escape_probabilities(&g, DEFAULT_ESCAPE_TOL, DEFAULT_MAX_ITERS)?;
        println!("{name}: {e:?} (residual {:.1e})", escape_residual(&g, &e));
        for h in [6, 10, 14] {
            let est = srw_escape_estimate(&build_cover(&g, root, h)?, 20_000, 1)?;
            println!("  h={h:>2}: {:.4} ± {:.4}", est.up_fraction, est.half_width);
        }
    }
    Ok(())
}
