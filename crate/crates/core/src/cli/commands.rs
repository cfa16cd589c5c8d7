use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    classify, escape_probabilities, escape_residual, level_counts, mbp_survival_estimate, moment_matrix,
    ClassificationResult, RotorDistributionFamily, Scalar, Tolerances, Verdict, DEFAULT_ESCAPE_TOL, DEFAULT_MAX_ITERS,
};
use crate::base_graph::{adjacency_matrix, validate};
use crate::error::{Error, Result};
use crate::rotor::{
    abelian_check, enumerate_configs, first_particle_oracle, lazy_good_path_frequency, n_bound_search,
    run_transfinite, sample_config, RotorConfiguration, RotorSampler, Schedule,
};
use crate::srw::srw_escape_estimate;
use crate::tree::build_cover;

use super::config::{Distributions, ExperimentConfig};

pub const DEFAULT_HEIGHT: u32 = 10;
pub const DEFAULT_PARTICLES: u64 = 100;
pub const DEFAULT_SAMPLES: u64 = 10_000;
pub const DEFAULT_DEPTH: u32 = 30;
pub const DEFAULT_ORACLE_HEIGHT: u32 = 3;
pub const DEFAULT_ORACLE_PARTICLES: u64 = 5;

/// Columns of the simulation CSV.
pub const SIMULATION_COLUMNS: [&str; 7] = ["h", "n", "E_n", "ratio", "escape_prob", "verdict", "seed"];

/// A finished command: the JSON report, an optional table for CSV output
/// and whether the command's checks passed.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub report: Value,
    pub table: Option<Table>,
    pub success: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io_err = |e: csv::Error| Error::Domain(format!("csv: {e}"));
        w.write_record(&self.columns).map_err(io_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(io_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Domain(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn tolerances(config: &ExperimentConfig) -> Tolerances {
    let mut tol = Tolerances::default();
    if let Some(t) = config.tol {
        tol.criticality = t;
    }
    tol
}

fn require_seed(config: &ExperimentConfig, command: &str) -> Result<u64> {
    config.seed.ok_or_else(|| {
        Error::Domain(format!("{command} is stochastic and needs a seed (--seed or \"seed\" in the config)"))
    })
}

fn verdict_for(config: &ExperimentConfig) -> Result<ClassificationResult> {
    match &config.dists {
        Distributions::Exact(d) => classify(&config.graph, d, tolerances(config)),
        Distributions::Float(d) => classify(&config.graph, d, tolerances(config)),
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Recurrent => "Recurrent",
        Verdict::Transient => "Transient",
    }
}

pub fn cmd_validate(config: &ExperimentConfig) -> CommandOutput {
    let report = validate(&config.graph);
    CommandOutput {
        report: json!({
            "command": "validate",
            "config": config.resolved(),
            "ok": report.ok,
            "violations": report.violations,
            "adjacency": adjacency_matrix(&config.graph),
            "max_degree": config.graph.max_degree(),
        }),
        table: None,
        success: report.ok,
    }
}

fn moment_entries<S: Scalar>(config: &ExperimentConfig, d: &RotorDistributionFamily<S>) -> (Vec<Vec<String>>, Vec<Vec<f64>>) {
    let m = moment_matrix(&config.graph, d);
    (m.render(), m.to_f64())
}

pub fn cmd_classify(config: &ExperimentConfig) -> Result<CommandOutput> {
    let result = verdict_for(config)?;
    let (rendered, floats) = match &config.dists {
        Distributions::Exact(d) => moment_entries(config, d),
        Distributions::Float(d) => moment_entries(config, d),
    };
    let mut table = Table::new(&["spectral_radius", "verdict", "critical", "positive_regular", "singular"]);
    table.rows.push(vec![
        format!("{}", result.spectral_radius),
        verdict_label(result.verdict).into(),
        result.critical.to_string(),
        result.positive_regular.to_string(),
        result.singular.to_string(),
    ]);
    Ok(CommandOutput {
        report: json!({
            "command": "classify",
            "config": config.resolved(),
            "moment_matrix": rendered,
            "moment_matrix_f64": floats,
            "spectral_radius": result.spectral_radius,
            "verdict": result.verdict,
            "critical": result.critical,
            "positive_regular": result.positive_regular,
            "singular": result.singular,
            "exact": result.exact,
        }),
        table: Some(table),
        success: true,
    })
}

pub fn cmd_escape(config: &ExperimentConfig) -> Result<CommandOutput> {
    let tol = config.tol.unwrap_or(DEFAULT_ESCAPE_TOL);
    let e = escape_probabilities(&config.graph, tol, DEFAULT_MAX_ITERS)?;
    let residual = escape_residual(&config.graph, &e);
    let mut table = Table::new(&["type", "escape_probability"]);
    for (i, p) in e.iter().enumerate() {
        table.rows.push(vec![(i + 1).to_string(), format!("{p}")]);
    }
    let mut report = json!({
        "command": "escape",
        "config": config.resolved(),
        "escape_probabilities": e,
        "root_escape": e[config.root.index()],
        "residual": residual,
    });
    // With a seed, add simple-random-walk estimates at each configured height.
    if let Some(seed) = config.seed {
        let walks = config.samples.unwrap_or(DEFAULT_SAMPLES);
        let mut estimates = Vec::new();
        for &h in config.heights.as_deref().unwrap_or(&[DEFAULT_HEIGHT]) {
            let tree = build_cover(&config.graph, config.root, h)?;
            estimates.push(srw_escape_estimate(&tree, walks, seed)?);
        }
        report["srw"] = serde_json::to_value(estimates).expect("serializable");
    }
    Ok(CommandOutput { report, table: Some(table), success: true })
}

pub fn cmd_levels(config: &ExperimentConfig) -> Result<CommandOutput> {
    let max_n = config.heights.as_ref().and_then(|h| h.iter().max().copied()).unwrap_or(DEFAULT_HEIGHT);
    let m = config.graph.type_count();
    let mut table = Table::new(&["n", "i", "j", "w"]);
    let mut levels = Vec::new();
    for n in 0..=max_n {
        let w = level_counts(&config.graph, n);
        for i in 0..m {
            for j in 0..m {
                table.rows.push(vec![n.to_string(), (i + 1).to_string(), (j + 1).to_string(), w.matrix()[i][j].to_string()]);
            }
        }
        levels.push(json!({
            "n": n,
            "w": w,
            "totals": w.totals().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }));
    }
    Ok(CommandOutput {
        report: json!({ "command": "levels", "config": config.resolved(), "levels": levels }),
        table: Some(table),
        success: true,
    })
}

/// Rotor configuration used by `simulate`: loaded or sampled on the tallest cover.
pub enum RotorSource {
    Sample,
    Given(RotorConfiguration),
}

pub fn cmd_simulate(config: &ExperimentConfig, rotors: RotorSource) -> Result<(CommandOutput, RotorConfiguration)> {
    let seed = require_seed(config, "simulate")?;
    let n = config.particles.unwrap_or(DEFAULT_PARTICLES);
    let mut heights = config.heights.clone().unwrap_or_else(|| vec![DEFAULT_HEIGHT]);
    heights.sort_unstable();
    heights.dedup();
    let tallest = *heights.last().expect("heights are non-empty");

    let verdict = verdict_for(config)?;
    let escape = escape_probabilities(&config.graph, DEFAULT_ESCAPE_TOL, DEFAULT_MAX_ITERS)?;
    let root_escape = escape[config.root.index()];

    let tall_tree = build_cover(&config.graph, config.root, tallest)?;
    let full = match rotors {
        RotorSource::Given(c) => RotorConfiguration::new(&tall_tree, c.states().to_vec())?,
        RotorSource::Sample => {
            let sampler = RotorSampler::new(&config.graph, &config.dists.to_f64())?;
            sample_config(&tall_tree, &sampler, seed)
        }
    };

    let mut table = Table::new(&SIMULATION_COLUMNS);
    let mut rows = Vec::new();
    let mut previous: Option<u64> = None;
    let mut stabilized_at = None;
    for &h in &heights {
        let tree = if h == tallest { tall_tree.clone() } else { build_cover(&config.graph, config.root, h)? };
        let mut cfg = full.restrict(&tree)?;
        let report = run_transfinite(&tree, &mut cfg, n)?;
        let escaped = report.escaped();
        if stabilized_at.is_none() && previous == Some(escaped) {
            stabilized_at = Some(h);
        }
        previous = Some(escaped);
        table.rows.push(vec![
            h.to_string(),
            n.to_string(),
            escaped.to_string(),
            format!("{}", report.ratio),
            format!("{root_escape}"),
            verdict_label(verdict.verdict).into(),
            seed.to_string(),
        ]);
        rows.push(json!({
            "h": h,
            "n": n,
            "E_n": escaped,
            "ratio": report.ratio,
            "escape_prob": root_escape,
            "verdict": verdict.verdict,
            "seed": seed,
            "down": report.down,
            "leaves_hit": report.leaf_hits.iter().filter(|&&x| x > 0).count(),
            "leaves": report.leaf_hits.len(),
            "steps": report.steps,
        }));
    }
    let output = CommandOutput {
        report: json!({
            "command": "simulate",
            "config": config.resolved(),
            "seed": seed,
            "spectral_radius": verdict.spectral_radius,
            "verdict": verdict.verdict,
            "critical": verdict.critical,
            "escape_prob": root_escape,
            "rows": rows,
            "stabilized_at": stabilized_at,
        }),
        table: Some(table),
        success: true,
    };
    Ok((output, full))
}

pub fn cmd_mbp(config: &ExperimentConfig) -> Result<CommandOutput> {
    let seed = require_seed(config, "mbp")?;
    let depth = config.depth.unwrap_or(DEFAULT_DEPTH);
    let samples = config.samples.unwrap_or(DEFAULT_SAMPLES);
    let dists = config.dists.to_f64();
    let estimates = mbp_survival_estimate(&config.graph, &dists, depth, samples, seed)?;
    let rotor_side = lazy_good_path_frequency(&config.graph, &dists, config.root, depth, samples, seed ^ 0x9E37_79B9_7F4A_7C15)?;
    let mut table = Table::new(&["type", "depth", "samples", "survived", "frequency", "half_width"]);
    for e in &estimates {
        table.rows.push(vec![
            e.root_type.to_string(),
            depth.to_string(),
            samples.to_string(),
            e.survived.to_string(),
            format!("{}", e.frequency),
            format!("{}", e.half_width),
        ]);
    }
    let mbp_root = &estimates[config.root.index()];
    let se = (mbp_root.std_error.powi(2) + rotor_side.std_error.powi(2)).sqrt();
    let agree = (mbp_root.frequency - rotor_side.frequency).abs() <= 3.0 * se;
    Ok(CommandOutput {
        report: json!({
            "command": "mbp",
            "config": config.resolved(),
            "seed": seed,
            "survival": estimates,
            "rotor_good_path": rotor_side,
            "agree_within_3se": agree,
        }),
        table: Some(table),
        success: true,
    })
}

pub fn cmd_oracle(config: &ExperimentConfig) -> Result<CommandOutput> {
    let h = config.heights.as_ref().and_then(|v| v.iter().max().copied()).unwrap_or(DEFAULT_ORACLE_HEIGHT);
    let n = config.particles.unwrap_or(DEFAULT_ORACLE_PARTICLES);
    let root = config.root;
    let tree = build_cover(&config.graph, root, h)?;

    let first = first_particle_oracle(&tree)?;

    let mut schedules = vec![Schedule::RoundRobin, Schedule::DeepestFirst, Schedule::ShallowestFirst];
    if let Some(seed) = config.seed {
        schedules.push(Schedule::Random(seed));
    }
    let mut abelian_fail = 0u64;
    let mut abelian_total = 0u64;
    for cfg in enumerate_configs(&tree)? {
        abelian_total += 1;
        if !abelian_check(&tree, &cfg, n, &schedules)? {
            abelian_fail += 1;
        }
    }

    let d_root = config.graph.degree(root) as u64;
    let n1 = n_bound_search(&build_cover(&config.graph, root, 1)?)?;
    let bound2 = (config.graph.max_degree() as u64 + 1).pow(2);
    let n2 = n_bound_search(&build_cover(&config.graph, root, 2)?)?;

    let abelian_ok = abelian_fail == 0;
    let n1_ok = n1 == d_root + 1;
    let n2_ok = n2 <= bound2;
    let success = first.all_passed() && abelian_ok && n1_ok && n2_ok;
    let pass = |b: bool| if b { "pass" } else { "FAIL" };
    let summary = format!(
        "{}/{} configurations pass first-particle equivalence; abelian: {}; n(1) = {}: {}; n(2) ≤ {}: {}",
        first.passed,
        first.total,
        pass(abelian_ok),
        d_root + 1,
        pass(n1_ok),
        bound2,
        pass(n2_ok),
    );
    Ok(CommandOutput {
        report: json!({
            "command": "oracle",
            "config": config.resolved(),
            "height": h,
            "particles": n,
            "first_particle": first,
            "abelian": { "configs": abelian_total, "failures": abelian_fail, "schedules": schedules },
            "n_1": n1,
            "n_2": n2,
            "n_2_bound": bound2,
            "summary": summary,
            "pass": success,
        }),
        table: None,
        success,
    })
}
