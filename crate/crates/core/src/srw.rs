//! Monte Carlo simple random walk on a wired cover.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::{binomial_std_error, stream_rng, Z_95};
use crate::tree::{CoverTree, NodeId};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SrwEstimate {
    pub walks: u64,
    pub up_fraction: f64,
    /// 95% binomial confidence half-width.
    pub half_width: f64,
    pub height: u32,
}

/// Walks from the root, each step to a uniform neighbour (parent or child),
/// until absorbed by the down sink or a depth-`h` leaf. Walk `w` uses stream
/// `(seed, w)`.
pub fn srw_escape_estimate(tree: &CoverTree, walks: u64, seed: u64) -> Result<SrwEstimate> {
    if walks == 0 {
        return Err(Error::Domain("need at least one walk".into()));
    }
    let ups: u64 = (0..walks)
        .into_par_iter()
        .map(|w| {
            let mut rng = stream_rng(seed, w);
            escapes(tree, &mut rng) as u64
        })
        .sum();
    let up_fraction = ups as f64 / walks as f64;
    Ok(SrwEstimate {
        walks,
        up_fraction,
        half_width: Z_95 * binomial_std_error(up_fraction, walks),
        height: tree.height(),
    })
}

fn escapes<R: Rng>(tree: &CoverTree, rng: &mut R) -> bool {
    let mut at = NodeId::ROOT;
    loop {
        if tree.is_leaf(at) {
            return true;
        }
        let k = rng.random_range(0..=tree.degree(at));
        if k == 0 {
            match tree.node(at).parent {
                Some(p) => at = p,
                None => return false,
            }
        } else {
            at = tree.child(at, k);
        }
    }
}
