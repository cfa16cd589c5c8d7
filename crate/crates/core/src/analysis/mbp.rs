use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::base_graph::{BaseGraph, TypeId};
use crate::error::{Error, Result};
use crate::rng::{binomial_std_error, stream_rng, Z_95};

use super::distribution::{RotorDistributionFamily, Scalar};
use super::offspring::{offspring_law, OffspringLaw};

/// A generation larger than this counts as survival.
pub const GENERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalEstimate {
    pub root_type: TypeId,
    pub depth: u32,
    pub samples: u64,
    pub survived: u64,
    pub frequency: f64,
    pub std_error: f64,
    /// 95% normal-approximation half-width.
    pub half_width: f64,
}

/// Per-root-type frequency of `Z_depth ≠ 0` for the good-children process.
pub fn mbp_survival_estimate<S: Scalar>(
    graph: &BaseGraph,
    dists: &RotorDistributionFamily<S>,
    depth: u32,
    samples: u64,
    seed: u64,
) -> Result<Vec<SurvivalEstimate>> {
    let law = offspring_law(graph, dists).to_f64();
    graph
        .types()
        .map(|root| survival_estimate_for_law(&law, root, depth, samples, seed))
        .collect()
}

/// Replica `r` of root type `i` draws from stream `(seed, i·2^40 + r)`.
pub fn survival_estimate_for_law(
    law: &OffspringLaw<f64>,
    root: TypeId,
    depth: u32,
    samples: u64,
    seed: u64,
) -> Result<SurvivalEstimate> {
    if depth == 0 || samples == 0 {
        return Err(Error::Domain("survival estimate needs depth ≥ 1 and samples ≥ 1".into()));
    }
    let base = (root.index() as u64) << 40;
    let survived: u64 = (0..samples)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, base + r);
            survives(law, root, depth, &mut rng) as u64
        })
        .sum();
    let frequency = survived as f64 / samples as f64;
    let std_error = binomial_std_error(frequency, samples);
    Ok(SurvivalEstimate {
        root_type: root,
        depth,
        samples,
        survived,
        frequency,
        std_error,
        half_width: Z_95 * std_error,
    })
}

fn survives<R: Rng>(law: &OffspringLaw<f64>, root: TypeId, depth: u32, rng: &mut R) -> bool {
    let m = law.type_count();
    let mut generation = vec![0u64; m];
    generation[root.index()] = 1;
    for _ in 0..depth {
        let mut next = vec![0u64; m];
        for (j, &count) in generation.iter().enumerate() {
            if count == 0 {
                continue;
            }
            // Multinomial split of `count` parents over the atoms.
            let atoms = law.atoms(TypeId::from_index(j));
            let mut remaining = count;
            let mut mass_left = 1.0f64;
            for (a, atom) in atoms.iter().enumerate() {
                if remaining == 0 {
                    break;
                }
                let parents = if a + 1 == atoms.len() || mass_left <= atom.prob {
                    remaining
                } else {
                    let p = (atom.prob / mass_left).clamp(0.0, 1.0);
                    Binomial::new(remaining, p).expect("p in [0,1]").sample(rng)
                };
                remaining -= parents;
                mass_left -= atom.prob;
                for (t, &c) in atom.counts.iter().enumerate() {
                    next[t] += parents * c as u64;
                }
            }
        }
        let total: u64 = next.iter().sum();
        if total == 0 {
            return false;
        }
        if total > GENERATION_CAP {
            return true;
        }
        generation = next;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Rational;
    use crate::base_graph::catalog;

    #[test]
    fn all_children_good_always_survives() {
        let g = catalog::embedding_c();
        let dists = RotorDistributionFamily::<Rational>::point_masses(&g, &[0, 0]).unwrap();
        for est in mbp_survival_estimate(&g, &dists, 30, 200, 3).unwrap() {
            assert_eq!(est.survived, 200);
        }
    }

    #[test]
    fn subcritical_dies_out() {
        let g = catalog::embedding_a();
        let dists = RotorDistributionFamily::<Rational>::uniform(&g);
        // Extinction by generation n from the hand-expanded generating functions.
        let (mut q1, mut q2) = (0.0f64, 0.0f64);
        for _ in 0..30 {
            (q1, q2) = ((q2 + 1.0) / 2.0, (q1 * q1 * q2 + q1 * q1 + q1 + 1.0) / 4.0);
        }
        let exact = [1.0 - q1, 1.0 - q2];
        let ests = mbp_survival_estimate(&g, &dists, 30, 10_000, 11).unwrap();
        for (est, p) in ests.iter().zip(exact) {
            assert!((est.frequency - p).abs() <= 3.0 * est.std_error, "{est:?} vs {p}");
        }
        assert!(ests[0].frequency <= 0.02);
    }

    #[test]
    fn deterministic_given_seed() {
        let g = catalog::embedding_c();
        let dists = RotorDistributionFamily::<f64>::uniform(&g);
        let a = mbp_survival_estimate(&g, &dists, 20, 500, 5).unwrap();
        let b = mbp_survival_estimate(&g, &dists, 20, 500, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn homogeneous_first_generation() {
        // Binary cover, uniform rotors: Z_1 = 0 iff the root rotor starts at 2.
        let g = BaseGraph::homogeneous(2);
        let dists = RotorDistributionFamily::<f64>::uniform(&g);
        let est = &mbp_survival_estimate(&g, &dists, 1, 30_000, 9).unwrap()[0];
        assert!((est.frequency - 2.0 / 3.0).abs() < 3.0 * est.std_error + 1e-9, "{est:?}");
    }
}
