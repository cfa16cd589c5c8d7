//! The good-children branching process and everything computed from it.
//!
//! A type-`i` vertex whose rotor sits at position `k` has good children at
//! positions `k+1..=d_i`. Counting them by type gives the offspring law of a
//! multitype branching process whose first-moment matrix decides whether the
//! transfinite rotor walk is recurrent (Perron root at most one) or transient.

mod classify;
mod distribution;
mod escape;
mod levels;
mod mbp;
mod moments;
mod offspring;
mod spectral;

pub use classify::{classify, ClassificationResult, Tolerances, Verdict, CRITICALITY_TOL};
pub use distribution::{Rational, RotorDistributionFamily, Scalar};
pub use escape::{escape_probabilities, escape_residual, DEFAULT_ESCAPE_TOL, DEFAULT_MAX_ITERS};
pub use levels::{level_counts, LevelCounts};
pub use mbp::{mbp_survival_estimate, survival_estimate_for_law, SurvivalEstimate, GENERATION_CAP};
pub use moments::{moment_matrix, positive_regularity, MomentMatrix, NumericField};
pub use offspring::{good_children_count, is_singular, offspring_law, pgf_eval, Atom, OffspringLaw};
pub use spectral::{compare_perron_root_with_one, spectral_radius, POWER_ITERATION_CAP};
