use serde::Serialize;

use crate::analysis::{RotorDistributionFamily, Scalar};
use crate::base_graph::{BaseGraph, TypeId};
use crate::error::{Error, Result};
use crate::tree::{build_cover, CoverTree, NodeId};

use super::config::{sample_config, RotorConfiguration, RotorSampler};

/// Where a particle is after a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Node(NodeId),
    /// Absorbed by the root's parent.
    Down,
    /// Absorbed at a depth-`h` leaf.
    Up(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Absorption {
    Down,
    Up(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WalkOutcome {
    pub absorbed: Absorption,
    pub steps: u64,
}

/// Advances the rotor at `node` and moves to the neighbour it now points at.
pub fn rotor_step(tree: &CoverTree, config: &mut RotorConfiguration, node: NodeId) -> Result<Location> {
    if tree.is_leaf(node) {
        return Err(Error::Contract(format!("rotor_step called on sink leaf {node}")));
    }
    let d = tree.degree(node) as u32;
    let state = &mut config.states[node.index()];
    *state = if *state >= d { 0 } else { *state + 1 };
    Ok(if *state == 0 {
        match tree.node(node).parent {
            Some(p) => Location::Node(p),
            None => Location::Down,
        }
    } else {
        let child = tree.child(node, *state as usize);
        if tree.is_leaf(child) {
            Location::Up(child)
        } else {
            Location::Node(child)
        }
    })
}

/// Safety bound on the steps of a single walk:
/// `10 · |nodes| · (D_max + 2)^(h+1)`, saturating.
pub fn step_limit(tree: &CoverTree) -> u64 {
    let base = tree.max_degree() as u64 + 2;
    let mut pow = 1u64;
    for _ in 0..=tree.height() {
        pow = pow.saturating_mul(base);
    }
    10u64.saturating_mul(tree.len() as u64).saturating_mul(pow)
}

/// Per-node, per-neighbour exit counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Odometer {
    exits: Vec<Vec<u64>>,
}

impl Odometer {
    pub fn new(tree: &CoverTree) -> Self {
        Odometer {
            exits: (0..tree.internal_count()).map(|i| vec![0; tree.degree(NodeId(i as u32)) + 1]).collect(),
        }
    }

    /// Exits from `node` toward neighbour `k` (0 = parent).
    pub fn exits(&self, node: NodeId, k: usize) -> u64 {
        self.exits[node.index()][k]
    }

    pub fn total_exits(&self, node: NodeId) -> u64 {
        self.exits[node.index()].iter().sum()
    }
}

fn route(tree: &CoverTree, config: &mut RotorConfiguration, mut odometer: Option<&mut Odometer>) -> Result<WalkOutcome> {
    let limit = step_limit(tree);
    let mut at = NodeId::ROOT;
    let mut steps = 0u64;
    loop {
        let next = rotor_step(tree, config, at)?;
        if let Some(odo) = odometer.as_deref_mut() {
            odo.exits[at.index()][config.states[at.index()] as usize] += 1;
        }
        steps += 1;
        match next {
            Location::Node(n) => at = n,
            Location::Down => return Ok(WalkOutcome { absorbed: Absorption::Down, steps }),
            Location::Up(leaf) => return Ok(WalkOutcome { absorbed: Absorption::Up(leaf), steps }),
        }
        if steps > limit {
            return Err(Error::Diagnostics { limit });
        }
    }
}

/// Routes one particle from the root until a sink absorbs it.
pub fn route_particle(tree: &CoverTree, config: &mut RotorConfiguration) -> Result<WalkOutcome> {
    route(tree, config, None)
}

pub fn route_particle_with_odometer(
    tree: &CoverTree,
    config: &mut RotorConfiguration,
    odometer: &mut Odometer,
) -> Result<WalkOutcome> {
    route(tree, config, Some(odometer))
}

/// `n` particles routed one after another without resetting rotors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub n: u64,
    pub height: u32,
    pub seed: Option<u64>,
    /// `escapes[k - 1] = E_k`, the up-absorptions among the first `k` particles.
    pub escapes: Vec<u64>,
    /// `E_n / n`.
    pub ratio: f64,
    pub down: u64,
    /// Hit count of each depth-`h` leaf, in id order.
    pub leaf_hits: Vec<u64>,
    pub steps: u64,
}

impl SimulationReport {
    pub fn escaped(&self) -> u64 {
        self.escapes.last().copied().unwrap_or(0)
    }
}

pub fn run_transfinite(tree: &CoverTree, config: &mut RotorConfiguration, n: u64) -> Result<SimulationReport> {
    if n == 0 {
        return Err(Error::Domain("run_transfinite needs at least one particle".into()));
    }
    let offset = tree.internal_count();
    let mut leaf_hits = vec![0u64; tree.leaf_count()];
    let mut escapes = Vec::with_capacity(n as usize);
    let (mut up, mut down, mut steps) = (0u64, 0u64, 0u64);
    for _ in 0..n {
        let outcome = route_particle(tree, config)?;
        steps += outcome.steps;
        match outcome.absorbed {
            Absorption::Up(leaf) => {
                up += 1;
                leaf_hits[leaf.index() - offset] += 1;
            }
            Absorption::Down => down += 1,
        }
        escapes.push(up);
    }
    Ok(SimulationReport {
        n,
        height: tree.height(),
        seed: None,
        escapes,
        ratio: up as f64 / n as f64,
        down,
        leaf_hits,
        steps,
    })
}

/// Transfinite runs over several heights on one sampled configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightSweep {
    pub reports: Vec<SimulationReport>,
    /// Smallest height whose `E_n` equals that of the previous height in the
    /// sweep; the stabilized surrogate for the untruncated cover.
    pub stabilized_at: Option<u32>,
}

impl HeightSweep {
    pub fn stabilized_escapes(&self) -> Option<u64> {
        let h = self.stabilized_at?;
        self.reports.iter().find(|r| r.height == h).map(SimulationReport::escaped)
    }
}

/// The configuration is sampled once on the tallest cover and restricted to
/// each shorter one, so every height sees the same rotors near the root.
pub fn height_sweep<S: Scalar>(
    graph: &BaseGraph,
    dists: &RotorDistributionFamily<S>,
    root: TypeId,
    heights: &[u32],
    n: u64,
    seed: u64,
) -> Result<HeightSweep> {
    let mut heights = heights.to_vec();
    heights.sort_unstable();
    heights.dedup();
    let tallest = *heights.last().ok_or_else(|| Error::Domain("no heights given".into()))?;
    let sampler = RotorSampler::new(graph, dists)?;
    let tall_tree = build_cover(graph, root, tallest)?;
    let full = sample_config(&tall_tree, &sampler, seed);

    let mut reports = Vec::with_capacity(heights.len());
    for &h in &heights {
        let tree = if h == tallest { tall_tree.clone() } else { build_cover(graph, root, h)? };
        let mut config = full.restrict(&tree)?;
        let mut report = run_transfinite(&tree, &mut config, n)?;
        report.seed = Some(seed);
        reports.push(report);
    }
    let stabilized_at = reports
        .windows(2)
        .find(|w| w[0].escaped() == w[1].escaped())
        .map(|w| w[1].height);
    Ok(HeightSweep { reports, stabilized_at })
}
