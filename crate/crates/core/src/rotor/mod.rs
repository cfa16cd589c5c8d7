//! Rotor-router walks on wired covers.
//!
//! State `k` at a node points at neighbour `k`: `0` is the parent, `1..=d`
//! the children in embedding order. A step first advances the rotor by one
//! (mod `d + 1`) and then moves the particle to the neighbour now pointed at.
//! Rotor states live in a [`RotorConfiguration`] beside the immutable
//! [`CoverTree`](crate::tree::CoverTree), so one tree serves many runs.

mod config;
mod oracle;
mod paths;
mod walk;

pub use config::{sample_config, RotorConfiguration, RotorSampler};
pub use oracle::{
    abelian_check, enumerate_configs, first_particle_oracle, min_particles_to_cover_level, n_bound_search,
    route_interleaved, ConfigEnumerator, OracleTally, RoutingSummary, Schedule, ENUMERATION_LIMIT,
};
pub use paths::{good_path_vertices_at_level, has_good_path, lazy_good_path_frequency};
pub use walk::{
    height_sweep, route_particle, route_particle_with_odometer, rotor_step, run_transfinite, step_limit,
    Absorption, HeightSweep, Location, Odometer, SimulationReport, WalkOutcome,
};
