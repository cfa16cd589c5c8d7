use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid base graph: {0}")]
    InvalidGraph(String),

    #[error("invalid rotor distribution: {0}")]
    InvalidDistribution(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} did not converge after {iterations} iterations (last iterate {last:?})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        last: Vec<f64>,
    },

    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: String,
        limit: u64,
    },

    #[error("invalid path: step {step} uses child index {index} but the node has {children} children")]
    Path {
        step: usize,
        index: usize,
        children: usize,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("walk exceeded {limit} steps; the routing loop is broken")]
    Diagnostics { limit: u64 },

    #[error("invalid rotor configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
