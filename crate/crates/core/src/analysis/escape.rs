use nalgebra::{DMatrix, DVector};

use crate::base_graph::{adjacency_matrix, BaseGraph};
use crate::error::{Error, Result};

pub const DEFAULT_ESCAPE_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITERS: usize = 100_000;

/// `φ_i(a) = 1 − 1/(1 + Σ_j d_ij a_j)`, evaluated as `s/(1 + s)` so small
/// values keep their relative precision.
fn hitting_map(d: &[Vec<f64>], a: &[f64]) -> Vec<f64> {
    d.iter()
        .map(|row| {
            let s: f64 = row.iter().zip(a).map(|(dij, aj)| dij * aj).sum();
            s / (1.0 + s)
        })
        .collect()
}

/// Probabilities that a simple random walk from the root of each cover never
/// returns to the root's parent: the maximal fixed point of `φ`.
///
/// Starts at `a = 1` and takes Newton steps on `a − φ(a)`, which decrease
/// monotonically to the maximal fixed point (the origin is always a fixed
/// point too). Any step that leaves `[0, a]` is replaced by a plain
/// application of `φ`. Stops when the sup-norm change drops below `tol`.
pub fn escape_probabilities(graph: &BaseGraph, tol: f64, max_iters: usize) -> Result<Vec<f64>> {
    let d: Vec<Vec<f64>> = adjacency_matrix(graph)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as f64).collect())
        .collect();
    let m = d.len();
    let dm = DMatrix::from_fn(m, m, |i, j| d[i][j]);
    let mut a = vec![1.0; m];

    for _ in 0..max_iters {
        let phi = hitting_map(&d, &a);
        let residual = DVector::from_fn(m, |i, _| a[i] - phi[i]);
        let scale = DVector::from_fn(m, |i, _| {
            let s: f64 = d[i].iter().zip(&a).map(|(x, y)| x * y).sum();
            1.0 / ((1.0 + s) * (1.0 + s))
        });
        let jacobian = DMatrix::identity(m, m) - DMatrix::from_diagonal(&scale) * &dm;
        let newton = jacobian
            .lu()
            .solve(&residual)
            .map(|delta| (0..m).map(|i| a[i] - delta[i]).collect::<Vec<_>>())
            .filter(|next| next.iter().zip(&a).all(|(n, old)| n.is_finite() && *n >= 0.0 && *n <= *old));
        let next = newton.unwrap_or(phi);

        let change = next.iter().zip(&a).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        a = next;
        if change < tol {
            return Ok(a);
        }
    }
    Err(Error::NonConvergence {
        what: "escape probability iteration",
        iterations: max_iters,
        last: a,
    })
}

/// Sup-norm residual of the fixed-point equation at `a`.
pub fn escape_residual(graph: &BaseGraph, a: &[f64]) -> f64 {
    let d: Vec<Vec<f64>> = adjacency_matrix(graph)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as f64).collect())
        .collect();
    hitting_map(&d, a)
        .iter()
        .zip(a)
        .map(|(p, x)| (p - x).abs())
        .fold(0.0, f64::max)
}
