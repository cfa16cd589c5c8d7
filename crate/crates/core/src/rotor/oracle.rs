//! Exhaustive and schedule-based checks on small covers.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::tree::{CoverTree, NodeId};

use super::config::RotorConfiguration;
use super::paths::has_good_path;
use super::walk::{route_particle, rotor_step, run_transfinite, Absorption, Location};

/// Maximum number of configurations [`enumerate_configs`] will visit.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// Mixed-radix counter over all rotor configurations; node 0 is the fastest
/// digit.
#[derive(Debug, Clone)]
pub struct ConfigEnumerator {
    radices: Vec<u32>,
    current: Option<Vec<u32>>,
    total: u64,
}

impl ConfigEnumerator {
    /// Number of configurations, `Π (d_x + 1)` over internal nodes.
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for ConfigEnumerator {
    type Item = RotorConfiguration;

    fn next(&mut self) -> Option<RotorConfiguration> {
        let states = self.current.as_mut()?;
        let out = RotorConfiguration { states: states.clone() };
        let mut carried = true;
        for (digit, &radix) in states.iter_mut().zip(&self.radices) {
            *digit += 1;
            if *digit < radix {
                carried = false;
                break;
            }
            *digit = 0;
        }
        if carried {
            self.current = None;
        }
        Some(out)
    }
}

pub fn enumerate_configs(tree: &CoverTree) -> Result<ConfigEnumerator> {
    let radices: Vec<u32> = (0..tree.internal_count()).map(|i| tree.degree(NodeId(i as u32)) as u32 + 1).collect();
    let mut total = 1u64;
    for &r in &radices {
        total = total.saturating_mul(r as u64);
        if total > ENUMERATION_LIMIT {
            return Err(Error::Capacity {
                what: "rotor configurations",
                requested: format!("more than {ENUMERATION_LIMIT}"),
                limit: ENUMERATION_LIMIT,
            });
        }
    }
    Ok(ConfigEnumerator { current: Some(vec![0; radices.len()]), radices, total })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleTally {
    pub passed: u64,
    pub total: u64,
}

impl OracleTally {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// Over every configuration: the first particle escapes iff a good path exists.
pub fn first_particle_oracle(tree: &CoverTree) -> Result<OracleTally> {
    let mut tally = OracleTally { passed: 0, total: 0 };
    for config in enumerate_configs(tree)? {
        let mut fresh = config.clone();
        let escaped = matches!(route_particle(tree, &mut fresh)?.absorbed, Absorption::Up(_));
        tally.total += 1;
        if escaped == has_good_path(tree, &config) {
            tally.passed += 1;
        }
    }
    Ok(tally)
}

/// Particles routed one at a time until every depth-`h` leaf has been hit.
pub fn min_particles_to_cover_level(tree: &CoverTree, config: &RotorConfiguration) -> Result<u64> {
    let base = tree.max_degree() as u64 + 1;
    let limit = (0..=tree.height()).fold(1u64, |acc, _| acc.saturating_mul(base)).saturating_add(1);
    let offset = tree.internal_count();
    let mut config = config.clone();
    let mut hit = vec![false; tree.leaf_count()];
    let mut missing = hit.len();
    let mut launched = 0u64;
    while missing > 0 {
        if launched >= limit {
            return Err(Error::Diagnostics { limit });
        }
        launched += 1;
        if let Absorption::Up(leaf) = route_particle(tree, &mut config)?.absorbed {
            let slot = &mut hit[leaf.index() - offset];
            if !*slot {
                *slot = true;
                missing -= 1;
            }
        }
    }
    Ok(launched)
}

/// Worst case of [`min_particles_to_cover_level`] over all configurations.
pub fn n_bound_search(tree: &CoverTree) -> Result<u64> {
    let mut worst = 0;
    for config in enumerate_configs(tree)? {
        worst = worst.max(min_particles_to_cover_level(tree, &config)?);
    }
    Ok(worst)
}

/// Rule choosing which active particle takes the next single step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Schedule {
    /// Lowest-indexed active particle until it is absorbed.
    Sequential,
    RoundRobin,
    /// Uniformly random active particle, seeded.
    Random(u64),
    DeepestFirst,
    ShallowestFirst,
}

/// Final state after routing every particle to a sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingSummary {
    pub config: RotorConfiguration,
    pub leaf_hits: Vec<u64>,
    pub down: u64,
}

/// Releases `n` particles at the root together and interleaves their single
/// steps according to `schedule`.
pub fn route_interleaved(
    tree: &CoverTree,
    config: &RotorConfiguration,
    n: u64,
    schedule: Schedule,
) -> Result<RoutingSummary> {
    let mut config = config.clone();
    let mut active: Vec<NodeId> = vec![NodeId::ROOT; n as usize];
    let mut leaf_hits = vec![0u64; tree.leaf_count()];
    let mut down = 0u64;
    let offset = tree.internal_count();
    let mut rng = match schedule {
        Schedule::Random(seed) => Some(stream_rng(seed, 0)),
        _ => None,
    };
    let mut cursor = 0usize;
    let limit = super::walk::step_limit(tree).saturating_mul(n.max(1));
    let mut steps = 0u64;

    while !active.is_empty() {
        let pick = match schedule {
            Schedule::Sequential => 0,
            Schedule::RoundRobin => cursor % active.len(),
            Schedule::Random(_) => rng.as_mut().expect("seeded").random_range(0..active.len()),
            Schedule::DeepestFirst => (0..active.len())
                .max_by_key(|&i| (tree.node(active[i]).depth, std::cmp::Reverse(i)))
                .expect("non-empty"),
            Schedule::ShallowestFirst => (0..active.len())
                .min_by_key(|&i| (tree.node(active[i]).depth, i))
                .expect("non-empty"),
        };
        steps += 1;
        if steps > limit {
            return Err(Error::Diagnostics { limit });
        }
        match rotor_step(tree, &mut config, active[pick])? {
            Location::Node(next) => {
                active[pick] = next;
                cursor = pick + 1;
            }
            Location::Down => {
                down += 1;
                active.remove(pick);
                cursor = pick;
            }
            Location::Up(leaf) => {
                leaf_hits[leaf.index() - offset] += 1;
                active.remove(pick);
                cursor = pick;
            }
        }
    }
    Ok(RoutingSummary { config, leaf_hits, down })
}

/// Every schedule ends in the same rotors, leaf hits and down count as the
/// one-at-a-time transfinite run.
pub fn abelian_check(tree: &CoverTree, config: &RotorConfiguration, n: u64, schedules: &[Schedule]) -> Result<bool> {
    let mut sequential = config.clone();
    let report = run_transfinite(tree, &mut sequential, n)?;
    let reference = RoutingSummary { config: sequential, leaf_hits: report.leaf_hits, down: report.down };
    for &schedule in schedules {
        if route_interleaved(tree, config, n, schedule)? != reference {
            return Ok(false);
        }
    }
    Ok(true)
}
