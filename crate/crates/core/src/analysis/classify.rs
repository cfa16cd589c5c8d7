use std::cmp::Ordering;

use serde::Serialize;

use crate::base_graph::BaseGraph;
use crate::error::Result;

use super::distribution::{RotorDistributionFamily, Scalar};
use super::moments::{moment_matrix, positive_regularity};
use super::offspring::{is_singular, offspring_law};
use super::spectral::{compare_perron_root_with_one, spectral_radius};

/// Float Perron roots within this distance of one are critical.
pub const CRITICALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Recurrent,
    Transient,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative accuracy of the power method (unused for `m ≤ 2`).
    pub spectral: f64,
    pub criticality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { spectral: 1e-13, criticality: CRITICALITY_TOL }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub spectral_radius: f64,
    pub verdict: Verdict,
    pub critical: bool,
    pub positive_regular: bool,
    pub singular: bool,
    /// The comparison with one was decided in exact arithmetic.
    pub exact: bool,
}

/// Recurrent iff the Perron root of the good-children moment matrix is at
/// most one. Inputs outside the positive-regular, non-singular setting are
/// classified anyway and flagged.
pub fn classify<S: Scalar>(
    graph: &BaseGraph,
    dists: &RotorDistributionFamily<S>,
    tol: Tolerances,
) -> Result<ClassificationResult> {
    let m = moment_matrix(graph, dists);
    let law = offspring_law(graph, dists);
    let mut rho = spectral_radius(&m, tol.spectral)?;

    let exact = compare_perron_root_with_one(&m);
    let (verdict, critical) = match exact {
        Some(Ordering::Equal) => {
            rho = 1.0;
            (Verdict::Recurrent, true)
        }
        Some(Ordering::Less) => (Verdict::Recurrent, false),
        Some(Ordering::Greater) => (Verdict::Transient, false),
        None => {
            let critical = (rho - 1.0).abs() <= tol.criticality;
            let verdict = if rho > 1.0 + tol.criticality { Verdict::Transient } else { Verdict::Recurrent };
            (verdict, critical)
        }
    };

    Ok(ClassificationResult {
        spectral_radius: rho,
        verdict,
        critical,
        positive_regular: positive_regularity(&m),
        singular: is_singular(&law),
        exact: exact.is_some(),
    })
}
