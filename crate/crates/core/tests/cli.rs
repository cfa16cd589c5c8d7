use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::Value;
use tempfile::TempDir;

use rotorwalk::cli::{run, Cli, Invocation, SIMULATION_COLUMNS};

fn write_config(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn invoke(args: &[&str], config: &Path) -> Invocation {
    let mut argv = vec!["rotorwalk"];
    argv.extend_from_slice(args);
    let config = config.to_str().unwrap();
    argv.extend_from_slice(&["--config", config]);
    run(&Cli::try_parse_from(argv).unwrap())
}

fn json(inv: &Invocation) -> Value {
    serde_json::from_str(&inv.stdout).unwrap()
}

const FIBONACCI: &str = r#"{"m":2, "children":[[2],[2,1]], "dists":"uniform", "root":2}"#;
const EMBEDDING_C: &str = r#"{"m":2, "children":[[2],[1,1,2]], "dists":"uniform", "root":2}"#;

#[test]
fn classify_embedding_verdicts() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"m":2, "children":[[2],[2,1,1]], "dists":"uniform", "root":2}"#, "Recurrent", 0.9253905),
        (EMBEDDING_C, "Transient", 1.0930703),
        (r#"{"m":2, "children":[[2,2],[2,1]], "dists":"uniform", "root":2}"#, "Recurrent", 1.0),
    ];
    for (k, (body, verdict, rho)) in cases.iter().enumerate() {
        let inv = invoke(&["classify"], &write_config(&dir, &format!("c{k}.json"), body));
        assert_eq!(inv.status, 0, "{}", inv.stderr);
        let report = json(&inv);
        assert_eq!(report["verdict"], *verdict);
        assert!((report["spectral_radius"].as_f64().unwrap() - rho).abs() < 1e-7);
        assert!(report["config"]["children"].is_array());
    }
}

#[test]
fn generalized_fibonacci_two_is_critical() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "g.json", r#"{"m":2, "children":[[2,2],[2,1]], "dists":"uniform", "root":1}"#);
    let report = json(&invoke(&["classify"], &path));
    assert_eq!(report["critical"], true);
    assert_eq!(report["spectral_radius"].as_f64(), Some(1.0));
}

#[test]
fn levels_and_escape() {
    let dir = TempDir::new().unwrap();
    let fib = write_config(&dir, "fib.json", FIBONACCI);
    let report = json(&invoke(&["levels", "--height", "3"], &fib));
    assert_eq!(report["levels"][3]["w"], serde_json::json!([["1", "2"], ["2", "3"]]));

    let binary = write_config(&dir, "bin.json", r#"{"m":1, "children":[[1,1]], "dists":"uniform", "root":1}"#);
    let report = json(&invoke(&["escape"], &binary));
    assert!((report["root_escape"].as_f64().unwrap() - 0.5).abs() < 1e-10);
    assert!(report.get("srw").is_none());
}

#[test]
fn simulate_is_byte_identical_per_seed() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "c.json", EMBEDDING_C);
    let args = ["simulate", "--seed", "17", "--height", "6", "--height", "8", "--particles", "40"];
    let a = invoke(&args, &path);
    let b = invoke(&args, &path);
    assert_eq!(a.status, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["config"]["seed"], 17);
    assert_eq!(report["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn simulate_csv_columns() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "c.json", EMBEDDING_C);
    let out = dir.path().join("sim.csv");
    let out_arg = out.to_str().unwrap();
    let inv = invoke(&["simulate", "--seed", "3", "--height", "5", "--format", "csv", "--out", out_arg], &path);
    assert_eq!(inv.status, 0, "{}", inv.stderr);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), SIMULATION_COLUMNS.join(","));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "5");
    assert_eq!(row[6], "3");
}

#[test]
fn saved_rotors_replay() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "fib.json", FIBONACCI);
    let rotors = dir.path().join("rotors.txt");
    let rotors_arg = rotors.to_str().unwrap();
    let first = invoke(&["simulate", "--seed", "5", "--height", "7", "--save-rotors", rotors_arg], &path);
    let replay = invoke(&["simulate", "--seed", "5", "--height", "7", "--rotors", rotors_arg], &path);
    assert_eq!(json(&first)["rows"], json(&replay)["rows"]);
}

#[test]
fn stochastic_commands_need_a_seed() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "c.json", EMBEDDING_C);
    for cmd in ["simulate", "mbp"] {
        let inv = invoke(&[cmd], &path);
        assert_eq!(inv.status, 2);
        assert!(inv.stderr.contains("seed"), "{}", inv.stderr);
    }
}

#[test]
fn semantic_errors() {
    let dir = TempDir::new().unwrap();
    let bad_type = write_config(&dir, "a.json", r#"{"m":2, "children":[[2],[3]], "dists":"uniform", "root":1}"#);
    let inv = invoke(&["classify"], &bad_type);
    assert_eq!(inv.status, 2);
    assert!(inv.stderr.contains("type out of range at children[1][0]"), "{}", inv.stderr);

    let bad_sum = write_config(&dir, "b.json", r#"{"m":1, "children":[[1]], "dists":[[0.5, 0.4]], "root":1}"#);
    let inv = invoke(&["classify"], &bad_sum);
    assert_eq!(inv.status, 2);
    assert!(inv.stderr.contains("type 1"), "{}", inv.stderr);

    let syntax = write_config(&dir, "c.json", "{\"m\": 2,\n  \"children\": [");
    let inv = invoke(&["classify"], &syntax);
    assert_eq!(inv.status, 2);
    assert!(inv.stderr.contains("line 2"), "{}", inv.stderr);
}

#[test]
fn validate_exit_status() {
    let dir = TempDir::new().unwrap();
    let ok = invoke(&["validate"], &write_config(&dir, "ok.json", FIBONACCI));
    assert_eq!(ok.status, 0);
    let split = write_config(&dir, "split.json", r#"{"m":2, "children":[[1],[1,2]], "dists":"uniform", "root":1}"#);
    let inv = invoke(&["validate"], &split);
    assert_eq!(inv.status, 1);
    assert_eq!(json(&inv)["ok"], false);
}

#[test]
fn oracle_summary_on_fibonacci() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "fib.json", FIBONACCI);
    let inv = invoke(&["oracle", "--seed", "1"], &path);
    assert_eq!(inv.status, 0, "{}", inv.stderr);
    let summary = json(&inv)["summary"].as_str().unwrap().to_string();
    assert!(summary.starts_with("324/324 configurations pass first-particle equivalence; abelian: pass"), "{summary}");
    assert!(summary.ends_with("n(2) ≤ 9: pass"), "{summary}");
}

#[test]
fn mbp_echoes_seed_and_agreement() {
    let dir = TempDir::new().unwrap();
    let path = write_config(&dir, "c.json", EMBEDDING_C);
    let inv = invoke(&["mbp", "--seed", "8", "--samples", "2000", "--depth", "12"], &path);
    assert_eq!(inv.status, 0, "{}", inv.stderr);
    let report = json(&inv);
    assert_eq!(report["config"]["seed"], 8);
    assert!(report.to_string().contains("agree_within_3se"));
}

#[test]
fn exact_rational_distributions() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"m":2, "children":[[2],[1,1,2]], "dists":[["1/2","1/2"],["1/4","1/4","1/4","1/4"]], "root":2}"#;
    let report = json(&invoke(&["classify"], &write_config(&dir, "r.json", body)));
    assert_eq!(report["exact"], true);
    assert_eq!(report["moment_matrix"], serde_json::json!([["0", "1/2"], ["3/4", "3/4"]]));
}

#[test]
fn shipped_configs_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let inv = invoke(&["validate"], &path);
        assert_eq!(inv.status, 0, "{}: {}", path.display(), inv.stderr);
        seen += 1;
    }
    assert!(seen >= 5);
}
