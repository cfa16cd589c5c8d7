use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::distribution::Scalar;
use super::moments::MomentMatrix;

/// Iteration cap for the power method on blocks larger than 2×2.
pub const POWER_ITERATION_CAP: usize = 1_000_000;

/// Largest exactly-compared dimension; principal minors cost `2^m` determinants.
const EXACT_COMPARE_MAX_DIM: usize = 16;

/// Perron root of a nonnegative matrix.
///
/// `m ≤ 2` uses the quadratic formula and ignores `tol`. Larger matrices are
/// split into strongly connected blocks; each block of size three or more is
/// shifted by the identity (making it primitive) and power-iterated until the
/// Collatz–Wielandt bounds `min (Ax)_i/x_i ≤ ρ ≤ max (Ax)_i/x_i` agree to
/// relative accuracy `tol`.
pub fn spectral_radius<S: Scalar>(m: &MomentMatrix<S>, tol: f64) -> Result<f64> {
    let a = m.to_f64();
    if let Some((i, j)) = find_negative(&a) {
        return Err(Error::Domain(format!("matrix entry ({i},{j}) is negative")));
    }
    match a.len() {
        0 => Ok(0.0),
        1 | 2 => Ok(closed_form(&a)),
        _ => {
            let mut rho = 0.0f64;
            for block in strongly_connected_blocks(&m.support()) {
                let sub: Vec<Vec<f64>> = block
                    .iter()
                    .map(|&i| block.iter().map(|&j| a[i][j]).collect())
                    .collect();
                let r = if sub.len() <= 2 { closed_form(&sub) } else { shifted_power_iteration(&sub, tol)? };
                rho = rho.max(r);
            }
            Ok(rho)
        }
    }
}

fn find_negative(a: &[Vec<f64>]) -> Option<(usize, usize)> {
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x < 0.0 || x.is_nan() {
                return Some((i, j));
            }
        }
    }
    None
}

fn closed_form(a: &[Vec<f64>]) -> f64 {
    match a.len() {
        0 => 0.0,
        1 => a[0][0].abs(),
        2 => {
            let (p, q, r, s) = (a[0][0], a[0][1], a[1][0], a[1][1]);
            let disc = (p - s) * (p - s) + 4.0 * q * r;
            0.5 * (p + s + disc.max(0.0).sqrt())
        }
        _ => unreachable!("closed form only for dimension ≤ 2"),
    }
}

fn shifted_power_iteration(a: &[Vec<f64>], tol: f64) -> Result<f64> {
    let n = a.len();
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    for _ in 0..POWER_ITERATION_CAP {
        for i in 0..n {
            y[i] = x[i] + a[i].iter().zip(&x).map(|(aij, xj)| aij * xj).sum::<f64>();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let ratio = y[i] / x[i];
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        if hi - lo <= tol * hi {
            return Ok(0.5 * (lo + hi) - 1.0);
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / norm;
        }
    }
    Err(Error::NonConvergence {
        what: "power iteration",
        iterations: POWER_ITERATION_CAP,
        last: x,
    })
}

/// Strongly connected components of a support pattern (Kosaraju on a dense
/// adjacency; dimensions here are tiny).
fn strongly_connected_blocks(support: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = support.len();
    let mut reach = support.to_vec();
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let block: Vec<usize> = (0..n).filter(|&j| reach[i][j] && reach[j][i]).collect();
        for &j in &block {
            assigned[j] = true;
        }
        blocks.push(block);
    }
    blocks
}

/// Exact comparison of the Perron root with one, for rational matrices.
///
/// `I − M` is a Z-matrix; it is a nonsingular M-matrix (`ρ < 1`) iff its
/// leading principal minors are positive, and an M-matrix (`ρ ≤ 1`) iff all
/// principal minors are nonnegative. Returns `None` for floats or matrices
/// too large to enumerate.
pub fn compare_perron_root_with_one<S: Scalar>(m: &MomentMatrix<S>) -> Option<Ordering> {
    let n = m.dim();
    if !S::EXACT || n > EXACT_COMPARE_MAX_DIM {
        return None;
    }
    let shifted: Vec<Vec<S>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { S::one() } else { S::zero() };
                    id - m.get(i, j).clone()
                })
                .collect()
        })
        .collect();
    let minor = |idx: &[usize]| -> S {
        let sub: Vec<Vec<S>> = idx.iter().map(|&i| idx.iter().map(|&j| shifted[i][j].clone()).collect()).collect();
        determinant(sub)
    };
    let leading: Vec<usize> = (0..n).collect();
    if (1..=n).all(|k| minor(&leading[..k]) > S::zero()) {
        return Some(Ordering::Less);
    }
    let all_nonneg = (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        minor(&idx) >= S::zero()
    });
    Some(if all_nonneg { Ordering::Equal } else { Ordering::Greater })
}

/// Gaussian elimination over a field; exact for rationals.
fn determinant<S: Scalar>(mut a: Vec<Vec<S>>) -> S {
    let n = a.len();
    let mut det = S::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return S::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = S::zero() - det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / p.clone();
            for c in col..n {
                let v = a[col][c].clone() * factor.clone();
                a[r][c] = a[r][c].clone() - v;
            }
        }
    }
    det
}
