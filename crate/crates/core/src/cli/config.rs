//! JSON experiment configuration.
//!
//! ```json
//! {"m": 2, "children": [[2], [2, 1]], "dists": "uniform", "root": 2,
//!  "heights": [4, 8, 12], "particles": 10, "samples": 10000, "depth": 30, "seed": 7}
//! ```
//!
//! `dists` is `"uniform"` or one probability row per type over states
//! `0..=d_i`. Entries may be JSON numbers or `"p/q"` strings; the family is
//! exact when every entry is an integer or a fraction string and float
//! otherwise.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{Rational, RotorDistributionFamily, Scalar};
use crate::base_graph::{validate, BaseGraph, TypeId};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid config: {}", .0.join("; "))]
    Semantic(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    m: usize,
    children: Vec<Vec<i64>>,
    dists: RawDists,
    root: i64,
    #[serde(default)]
    heights: Option<Vec<u32>>,
    #[serde(default)]
    particles: Option<u64>,
    #[serde(default)]
    samples: Option<u64>,
    #[serde(default)]
    depth: Option<u32>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawDists {
    Keyword(String),
    Table(Vec<Vec<RawProb>>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawProb {
    Number(serde_json::Number),
    Text(String),
}

/// Rotor laws in whichever field the config asked for.
#[derive(Debug, Clone, PartialEq)]
pub enum Distributions {
    Exact(RotorDistributionFamily<Rational>),
    Float(RotorDistributionFamily<f64>),
}

impl Distributions {
    pub fn rendered(&self) -> serde_json::Value {
        match self {
            Distributions::Exact(d) => serde_json::to_value(d).expect("serializable"),
            Distributions::Float(d) => serde_json::to_value(d.rows()).expect("serializable"),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Distributions::Exact(_))
    }

    pub fn to_f64(&self) -> RotorDistributionFamily<f64> {
        match self {
            Distributions::Exact(d) => d.to_f64(),
            Distributions::Float(d) => d.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph: BaseGraph,
    pub dists: Distributions,
    pub root: TypeId,
    pub heights: Option<Vec<u32>>,
    pub particles: Option<u64>,
    pub samples: Option<u64>,
    pub depth: Option<u32>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

/// The config as resolved after defaults and flag overrides, echoed in
/// every report.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedConfig {
    pub m: usize,
    pub children: Vec<Vec<usize>>,
    pub dists: serde_json::Value,
    pub exact: bool,
    pub root: usize,
    pub heights: Option<Vec<u32>>,
    pub particles: Option<u64>,
    pub samples: Option<u64>,
    pub depth: Option<u32>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

impl ExperimentConfig {
    pub fn resolved(&self) -> ResolvedConfig {
        ResolvedConfig {
            m: self.graph.type_count(),
            children: self.graph.to_labels(),
            dists: self.dists.rendered(),
            exact: self.dists.is_exact(),
            root: self.root.label(),
            heights: self.heights.clone(),
            particles: self.particles,
            samples: self.samples,
            depth: self.depth,
            seed: self.seed,
            tol: self.tol,
        }
    }
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let mut errors = Vec::new();
    let m = raw.m;
    if m == 0 {
        errors.push("m must be at least 1".to_string());
    }
    if raw.children.len() != m {
        errors.push(format!("children has {} rows but m = {m}", raw.children.len()));
    }
    for (i, row) in raw.children.iter().enumerate() {
        for (k, &label) in row.iter().enumerate() {
            if label < 1 || label as usize > m {
                errors.push(format!("type out of range at children[{i}][{k}]: {label} not in 1..={m}"));
            }
        }
    }
    if raw.root < 1 || raw.root as usize > m {
        errors.push(format!("root {} not in 1..={m}", raw.root));
    }
    if let Some(tol) = raw.tol {
        if tol.is_nan() || tol <= 0.0 {
            errors.push(format!("tol must be positive, got {tol}"));
        }
    }
    if let Some(heights) = &raw.heights {
        if heights.is_empty() || heights.contains(&0) {
            errors.push("heights must be a non-empty list of positive integers".to_string());
        }
    }
    if !errors.is_empty() {
        return Err(ConfigError::Semantic(errors));
    }

    let labels: Vec<Vec<usize>> = raw
        .children
        .iter()
        .map(|r| r.iter().map(|&x| x as usize).collect())
        .collect();
    let graph = BaseGraph::from_labels(&labels).map_err(|e| ConfigError::Semantic(vec![e.to_string()]))?;
    let report = validate(&graph);
    if !report.ok {
        return Err(ConfigError::Semantic(report.violations));
    }

    let dists = parse_dists(&graph, raw.dists)?;
    Ok(ExperimentConfig {
        graph,
        dists,
        root: TypeId::new(raw.root as usize),
        heights: raw.heights,
        particles: raw.particles,
        samples: raw.samples,
        depth: raw.depth,
        seed: raw.seed,
        tol: raw.tol,
    })
}

fn parse_dists(graph: &BaseGraph, raw: RawDists) -> Result<Distributions, ConfigError> {
    let table = match raw {
        RawDists::Keyword(k) if k == "uniform" => {
            return Ok(Distributions::Exact(RotorDistributionFamily::uniform(graph)));
        }
        RawDists::Keyword(k) => {
            return Err(ConfigError::Semantic(vec![format!("unknown dists keyword {k:?}; expected \"uniform\"")]));
        }
        RawDists::Table(t) => t,
    };

    let mut errors = Vec::new();
    if table.len() != graph.type_count() {
        errors.push(format!("dists has {} rows but m = {}", table.len(), graph.type_count()));
        return Err(ConfigError::Semantic(errors));
    }
    let exact = table.iter().flatten().all(|p| match p {
        RawProb::Number(n) => n.is_i64() || n.is_u64(),
        RawProb::Text(_) => true,
    });

    let mut exact_rows = Vec::new();
    let mut float_rows = Vec::new();
    for (i, row) in table.iter().enumerate() {
        let mut er = Vec::new();
        let mut fr = Vec::new();
        for (k, p) in row.iter().enumerate() {
            match parse_prob(p) {
                Ok(q) => {
                    fr.push(match p {
                        RawProb::Number(n) => n.as_f64().unwrap_or(f64::NAN),
                        RawProb::Text(_) => q.to_f64(),
                    });
                    er.push(q);
                }
                Err(msg) => errors.push(format!("dists[{i}][{k}]: {msg}")),
            }
        }
        exact_rows.push(er);
        float_rows.push(fr);
    }
    if !errors.is_empty() {
        return Err(ConfigError::Semantic(errors));
    }
    let family = if exact {
        RotorDistributionFamily::new(graph, exact_rows).map(Distributions::Exact)
    } else {
        RotorDistributionFamily::new(graph, float_rows).map(Distributions::Float)
    };
    family.map_err(|e| ConfigError::Semantic(vec![e.to_string()]))
}

/// Exact value of an entry; floats parse through their decimal text.
fn parse_prob(p: &RawProb) -> Result<Rational, String> {
    match p {
        RawProb::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                let f = n.as_f64().ok_or("not a finite number")?;
                Rational::from_float(f).ok_or_else(|| format!("{f} is not finite"))
            }
        }
        RawProb::Text(s) => s
            .trim()
            .parse::<Rational>()
            .map_err(|_| format!("{s:?} is not a fraction p/q")),
    }
}
