//! Command-line front end: JSON config in, JSON report out.
//!
//! ```text
//! rotorwalk <validate|classify|escape|levels|simulate|mbp|oracle> --config <path>
//!     [--seed <u64>] [--out <path>] [--format json|csv] [--height <h>]...
//!     [--particles <n>] [--samples <n>] [--depth <n>] [--tol <x>]
//!     [--export-tree <path>] [--save-rotors <path>] [--rotors <path>]
//! ```
//!
//! The JSON report always goes to standard output; `--out` additionally
//! writes it (or its table, with `--format csv`) to a file. The simulation
//! CSV has the columns `h,n,E_n,ratio,escape_prob,verdict,seed`.
//!
//! `--export-tree` (with `levels` or `simulate`) writes the cover of the configured root at
//! the largest height as an edge list, one `parent child child_type depth`
//! line per edge. `--save-rotors` and `--rotors` (with `simulate`) write or
//! read the rotor configuration of the tallest cover as one line of
//! space-separated states in node-id order.
//!
//! Exit status: 0 on success, 1 when `validate` or `oracle` checks fail,
//! 2 on configuration or runtime errors.

mod commands;
mod config;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{
    cmd_classify, cmd_escape, cmd_levels, cmd_mbp, cmd_oracle, cmd_simulate, cmd_validate, CommandOutput, RotorSource,
    Table, SIMULATION_COLUMNS,
};
pub use config::{parse_config, ConfigError, Distributions, ExperimentConfig, ResolvedConfig};

use crate::rotor::RotorConfiguration;
use crate::tree::build_cover;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check the base graph assumptions.
    Validate,
    /// Moment matrix, Perron root and recurrence verdict.
    Classify,
    /// Simple-random-walk escape probabilities.
    Escape,
    /// Vertex counts by type and level.
    Levels,
    /// Transfinite rotor-router runs over the configured heights.
    Simulate,
    /// Survival frequencies of the good-children branching process.
    Mbp,
    /// Exhaustive first-particle, abelian and particle-bound checks.
    Oracle,
}

#[derive(Debug, Parser)]
#[command(name = "rotorwalk", version, about = "Rotor-router walks on directed covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long = "height", global = true)]
    pub heights: Vec<u32>,
    #[arg(long, global = true)]
    pub particles: Option<u64>,
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub export_tree: Option<PathBuf>,
    #[arg(long, global = true)]
    pub save_rotors: Option<PathBuf>,
    #[arg(long, global = true)]
    pub rotors: Option<PathBuf>,
}

/// Writes the tallest configured cover as an edge list when `--export-tree` is set.
fn export_tree(cli: &Cli, config: &ExperimentConfig) -> crate::Result<()> {
    let Some(p) = &cli.export_tree else { return Ok(()) };
    let h = config.heights.as_ref().and_then(|v| v.iter().max().copied()).unwrap_or(commands::DEFAULT_HEIGHT);
    let tree = build_cover(&config.graph, config.root, h)?;
    let file = fs::File::create(p).map_err(|e| crate::Error::Domain(format!("{}: {e}", p.display())))?;
    tree.write_edge_list(std::io::BufWriter::new(file))
        .map_err(|e| crate::Error::Domain(format!("{}: {e}", p.display())))
}

/// Result of a CLI invocation: what to print and the exit status.
#[derive(Debug)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

impl Cli {
    fn apply_overrides(&self, config: &mut ExperimentConfig) -> Result<(), String> {
        if self.seed.is_some() {
            config.seed = self.seed;
        }
        if !self.heights.is_empty() {
            if self.heights.contains(&0) {
                return Err("--height must be positive".into());
            }
            config.heights = Some(self.heights.clone());
        }
        if self.particles.is_some() {
            config.particles = self.particles;
        }
        if self.samples.is_some() {
            config.samples = self.samples;
        }
        if self.depth.is_some() {
            config.depth = self.depth;
        }
        if let Some(t) = self.tol {
            if t.is_nan() || t <= 0.0 {
                return Err("--tol must be positive".into());
            }
            config.tol = Some(t);
        }
        Ok(())
    }
}

fn failure(message: String) -> Invocation {
    Invocation { stdout: String::new(), stderr: format!("error: {message}\n"), status: 2 }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Invocation {
    let Some(path) = &cli.config else {
        return failure("--config <path> is required".into());
    };
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return failure(format!("cannot read {}: {e}", path.display())),
    };
    let mut config = match parse_config(&text) {
        Ok(c) => c,
        Err(ConfigError::Semantic(violations)) if cli.command == Command::Validate => {
            let report = serde_json::json!({ "command": "validate", "ok": false, "violations": violations });
            return Invocation {
                stdout: format!("{}\n", serde_json::to_string_pretty(&report).expect("json")),
                stderr: String::new(),
                status: 1,
            };
        }
        Err(e) => return failure(e.to_string()),
    };
    if let Err(e) = cli.apply_overrides(&mut config) {
        return failure(e);
    }

    let result = match cli.command {
        Command::Validate => Ok(cmd_validate(&config)),
        Command::Classify => cmd_classify(&config),
        Command::Escape => cmd_escape(&config),
        Command::Levels => cmd_levels(&config).and_then(|out| export_tree(cli, &config).map(|_| out)),
        Command::Simulate => {
            let source = match &cli.rotors {
                Some(p) => match fs::read_to_string(p) {
                    Ok(line) => match line.parse::<RotorConfiguration>() {
                        Ok(c) => RotorSource::Given(c),
                        Err(e) => return failure(e.to_string()),
                    },
                    Err(e) => return failure(format!("cannot read {}: {e}", p.display())),
                },
                None => RotorSource::Sample,
            };
            cmd_simulate(&config, source).and_then(|(out, rotors)| {
                export_tree(cli, &config)?;
                if let Some(p) = &cli.save_rotors {
                    fs::write(p, rotors.to_line()).map_err(|e| crate::Error::Domain(format!("{}: {e}", p.display())))?;
                }
                Ok(out)
            })
        }
        Command::Mbp => cmd_mbp(&config),
        Command::Oracle => cmd_oracle(&config),
    };
    let output = match result {
        Ok(o) => o,
        Err(e) => return failure(e.to_string()),
    };

    let json = serde_json::to_string_pretty(&output.report).expect("report is valid json");
    let mut stderr = String::new();
    if let Some(summary) = output.report.get("summary").and_then(|s| s.as_str()) {
        stderr.push_str(summary);
        stderr.push('\n');
    }
    if let Some(p) = &cli.out {
        let body = match (cli.format, &output.table) {
            (Format::Csv, Some(table)) => match table.to_csv() {
                Ok(s) => s,
                Err(e) => return failure(e.to_string()),
            },
            (Format::Csv, None) => return failure("this command has no tabular output; use --format json".into()),
            (Format::Json, _) => format!("{json}\n"),
        };
        if let Err(e) = fs::write(p, body) {
            return failure(format!("cannot write {}: {e}", p.display()));
        }
    }
    Invocation { stdout: format!("{json}\n"), stderr, status: if output.success { 0 } else { 1 } }
}
