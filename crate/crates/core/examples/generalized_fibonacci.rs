//! Perron root of the generalized Fibonacci family against its closed form.
//!
//! cargo run --example generalized_fibonacci

use rotorwalk::analysis::{classify, Rational, RotorDistributionFamily, Tolerances};
use rotorwalk::base_graph::catalog;

fn main() -> rotorwalk::Result<()> {
    println!("alpha  rho(M)        (1+sqrt(12a+1))/6  verdict");
    for alpha in 1..=8 {
        let g = catalog::generalized_fibonacci(alpha);
        let r = classify(&g, &RotorDistributionFamily::<Rational>::uniform(&g), Tolerances::default())?;
        let closed = (1.0 + (12.0 * alpha as f64 + 1.0).sqrt()) / 6.0;
        println!("{alpha:>5}  {:.10}  {closed:.10}       {:?}", r.spectral_radius, r.verdict);
    }
    Ok(())
}
