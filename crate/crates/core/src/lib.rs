//! Recurrence and transience of rotor-router walks on directed covers.
//!
//! A finite strongly connected graph with an ordered child list per vertex
//! type generates a periodic tree (its directed cover). With independent
//! random initial rotors, the transfinite rotor-router walk from the root is
//! recurrent exactly when the Perron root of the good-children branching
//! process is at most one, and otherwise escapes at the simple-random-walk
//! rate.
//!
//! - [`base_graph`]: generating graphs and their validation.
//! - [`analysis`]: offspring law, moment matrix, Perron root, verdict,
//!   escape probabilities, level counts, branching-process sampling.
//! - [`tree`]: breadth-first arena covers with up and down sinks.
//! - [`rotor`]: rotor configurations, routing, good paths and exhaustive oracles.
//! - [`srw`]: simple random walk estimates of the escape probabilities.
//! - [`cli`]: JSON configuration and the command implementations behind the
//!   `rotorwalk` binary.
//!
//! ```
//! use rotorwalk::analysis::{classify, Rational, RotorDistributionFamily, Tolerances, Verdict};
//! use rotorwalk::base_graph::catalog;
//!
//! let graph = catalog::embedding_c();
//! let dists = RotorDistributionFamily::<Rational>::uniform(&graph);
//! let result = classify(&graph, &dists, Tolerances::default()).unwrap();
//! assert_eq!(result.verdict, Verdict::Transient);
//! ```

pub mod analysis;
pub mod base_graph;
pub mod cli;
pub mod error;
pub mod rng;
pub mod rotor;
pub mod srw;
pub mod tree;

pub use error::{Error, Result};
