use rand::Rng;
use rayon::prelude::*;

use crate::analysis::{RotorDistributionFamily, Scalar, SurvivalEstimate};
use crate::base_graph::{BaseGraph, TypeId};
use crate::error::{Error, Result};
use crate::rng::{binomial_std_error, stream_rng, Z_95};
use crate::tree::{CoverTree, NodeId};

use super::config::{RotorConfiguration, RotorSampler};

/// Depth-first search over good children (positions above the rotor state)
/// for a path from `start` down to depth `h`.
fn good_path_from(tree: &CoverTree, config: &RotorConfiguration, start: NodeId) -> bool {
    let mut stack = vec![start];
    while let Some(node) = stack.pop() {
        if tree.is_leaf(node) {
            return true;
        }
        let first_good = config.state(node) as usize + 1;
        for k in (first_good..=tree.degree(node)).rev() {
            stack.push(tree.child(node, k));
        }
    }
    false
}

/// A root-to-leaf path of good children exists; equivalently the next
/// particle released at the root escapes.
pub fn has_good_path(tree: &CoverTree, config: &RotorConfiguration) -> bool {
    good_path_from(tree, config, NodeId::ROOT)
}

/// Depth-`level` nodes with a good-children path down to depth `h`.
pub fn good_path_vertices_at_level(tree: &CoverTree, config: &RotorConfiguration, level: u32) -> Result<Vec<NodeId>> {
    if level == 0 || level >= tree.height() {
        return Err(Error::Domain(format!("level must lie in 1..{}, got {level}", tree.height())));
    }
    Ok(tree
        .level(level)
        .map(|i| NodeId(i as u32))
        .filter(|&id| good_path_from(tree, config, id))
        .collect())
}

fn lazy_search<R: Rng>(graph: &BaseGraph, sampler: &RotorSampler, ty: TypeId, remaining: u32, rng: &mut R) -> bool {
    if remaining == 0 {
        return true;
    }
    let state = sampler.sample(ty, rng) as usize;
    graph.children(ty)[state..]
        .iter()
        .any(|&child| lazy_search(graph, sampler, child, remaining - 1, rng))
}

/// Frequency of a good path from the root to `depth`, with each visited
/// rotor drawn when the search first reaches it.
///
/// Rotors are independent, so this has the law of [`has_good_path`] on a
/// sampled cover of height `depth` without materializing the cover. Sample
/// `r` uses stream `(seed, r)`.
pub fn lazy_good_path_frequency<S: Scalar>(
    graph: &BaseGraph,
    dists: &RotorDistributionFamily<S>,
    root: TypeId,
    depth: u32,
    samples: u64,
    seed: u64,
) -> Result<SurvivalEstimate> {
    if depth == 0 || samples == 0 {
        return Err(Error::Domain("good-path frequency needs depth ≥ 1 and samples ≥ 1".into()));
    }
    let sampler = RotorSampler::new(graph, dists)?;
    let survived: u64 = (0..samples)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, r);
            lazy_search(graph, &sampler, root, depth, &mut rng) as u64
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
