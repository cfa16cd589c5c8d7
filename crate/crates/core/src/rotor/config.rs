use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::analysis::{RotorDistributionFamily, Scalar};
use crate::base_graph::{BaseGraph, TypeId};
use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::tree::{CoverTree, NodeId};

/// Rotor state of every internal node, indexed by node id.
///
/// The text form is the states in node-id order as decimal integers
/// separated by single spaces, terminated by a newline.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotorConfiguration {
    pub(crate) states: Vec<u32>,
}

impl RotorConfiguration {
    /// Checks length and ranges against `tree`.
    pub fn new(tree: &CoverTree, states: Vec<u32>) -> Result<Self> {
        if states.len() != tree.internal_count() {
            return Err(Error::Config(format!(
                "expected {} rotor states, got {}",
                tree.internal_count(),
                states.len()
            )));
        }
        for (i, &s) in states.iter().enumerate() {
            let d = tree.degree(NodeId(i as u32));
            if s as usize > d {
                return Err(Error::Config(format!("node {i} has state {s} but only {d} children")));
            }
        }
        Ok(RotorConfiguration { states })
    }

    /// Every rotor at `0` (pointing at the parent).
    pub fn zeros(tree: &CoverTree) -> Self {
        RotorConfiguration { states: vec![0; tree.internal_count()] }
    }

    /// Every rotor at its last child.
    pub fn maxed(tree: &CoverTree) -> Self {
        RotorConfiguration {
            states: (0..tree.internal_count()).map(|i| tree.degree(NodeId(i as u32)) as u32).collect(),
        }
    }

    pub fn state(&self, node: NodeId) -> u32 {
        self.states[node.index()]
    }

    pub fn states(&self) -> &[u32] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Restriction to a shorter cover with the same root (an id prefix).
    pub fn restrict(&self, shorter: &CoverTree) -> Result<Self> {
        let n = shorter.internal_count();
        if n > self.states.len() {
            return Err(Error::Config("restriction target is taller than the configuration".into()));
        }
        RotorConfiguration::new(shorter, self.states[..n].to_vec())
    }

    pub fn to_line(&self) -> String {
        format!("{self}\n")
    }

    /// Parses the text form; validate against a tree with [`RotorConfiguration::new`].
    pub fn parse_line(line: &str) -> Result<Vec<u32>> {
        let line = line.strip_suffix('\n').unwrap_or(line);
        if line.is_empty() {
            return Ok(Vec::new());
        }
        line.split(' ')
            .enumerate()
            .map(|(i, tok)| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Config(format!("token {i} ({tok:?}) is not a rotor state")))
            })
            .collect()
    }
}

impl fmt::Display for RotorConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.states.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for RotorConfiguration {
    type Err = Error;

    /// Parses without a tree; ranges are unchecked.
    fn from_str(s: &str) -> Result<Self> {
        Ok(RotorConfiguration { states: Self::parse_line(s)? })
    }
}

/// Per-type categorical samplers for initial rotor states.
#[derive(Debug, Clone)]
pub struct RotorSampler {
    per_type: Vec<WeightedIndex<f64>>,
}

impl RotorSampler {
    pub fn new<S: Scalar>(graph: &BaseGraph, dists: &RotorDistributionFamily<S>) -> Result<Self> {
        let per_type = graph
            .types()
            .map(|i| {
                let weights: Vec<f64> = dists.probabilities(i).iter().map(Scalar::to_f64).collect();
                WeightedIndex::new(weights)
                    .map_err(|e| Error::InvalidDistribution(format!("type {i}: {e}")))
            })
            .collect::<Result<_>>()?;
        Ok(RotorSampler { per_type })
    }

    pub fn sample<R: Rng + ?Sized>(&self, ty: TypeId, rng: &mut R) -> u32 {
        self.per_type[ty.index()].sample(rng) as u32
    }
}

/// Independent draws, one per internal node in id order, from stream 0 of
/// `seed`. Because shorter covers are id prefixes, the configuration sampled
/// on a shorter cover with the same seed is the restriction of this one.
pub fn sample_config(tree: &CoverTree, sampler: &RotorSampler, seed: u64) -> RotorConfiguration {
    let mut rng = stream_rng(seed, 0);
    let states = (0..tree.internal_count())
        .map(|i| sampler.sample(tree.node(NodeId(i as u32)).ty, &mut rng))
        .collect();
    RotorConfiguration { states }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Rational;
    use crate::base_graph::catalog;
    use crate::tree::build_cover;

    #[test]
    fn point_mass_at_zero_samples_zeros() {
        let g = catalog::fibonacci();
        let t = build_cover(&g, TypeId::new(2), 4).unwrap();
        let dists = RotorDistributionFamily::<Rational>::point_masses(&g, &[0, 0]).unwrap();
        let sampler = RotorSampler::new(&g, &dists).unwrap();
        assert_eq!(sample_config(&t, &sampler, 1), RotorConfiguration::zeros(&t));
    }

    #[test]
    fn sampling_is_deterministic_and_prefix_consistent() {
        let g = catalog::fibonacci();
        let sampler = RotorSampler::new(&g, &RotorDistributionFamily::<f64>::uniform(&g)).unwrap();
        let short = build_cover(&g, TypeId::new(2), 2).unwrap();
        let tall = build_cover(&g, TypeId::new(2), 6).unwrap();
        assert_eq!(sample_config(&short, &sampler, 42), sample_config(&short, &sampler, 42));
        assert_eq!(
            sample_config(&tall, &sampler, 42).restrict(&short).unwrap(),
            sample_config(&short, &sampler, 42)
        );
    }

    #[test]
    fn state_frequencies_match_the_law() {
        let g = catalog::embedding_c();
        let probs = vec![vec![0.3, 0.7], vec![0.1, 0.2, 0.3, 0.4]];
        let dists = RotorDistributionFamily::new(&g, probs.clone()).unwrap();
        let sampler = RotorSampler::new(&g, &dists).unwrap();
        let t = build_cover(&g, TypeId::new(2), 17).unwrap();
        assert!(t.internal_count() >= 100_000);
        let cfg = sample_config(&t, &sampler, 2024);
        for ty in g.types() {
            let states: Vec<u32> = (0..t.internal_count())
                .filter(|&i| t.node(NodeId(i as u32)).ty == ty)
                .map(|i| cfg.states[i])
                .collect();
            let n = states.len() as f64;
            for (k, &p) in probs[ty.index()].iter().enumerate() {
                let freq = states.iter().filter(|&&s| s as usize == k).count() as f64 / n;
                let se = (p * (1.0 - p) / n).sqrt();
                assert!((freq - p).abs() < 3.0 * se + 1e-12, "type {ty} state {k}: {freq} vs {p}");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let g = catalog::fibonacci();
        let t = build_cover(&g, TypeId::new(2), 2).unwrap();
        let cfg = RotorConfiguration::new(&t, vec![2, 0, 1]).unwrap();
        assert_eq!(cfg.to_line(), "2 0 1\n");
        let parsed: RotorConfiguration = "2 0 1\n".parse().unwrap();
        assert_eq!(parsed, cfg);
        assert!(RotorConfiguration::new(&t, vec![2, 0, 2]).is_err());
        assert!(RotorConfiguration::parse_line("1  2").is_err());
    }
}
