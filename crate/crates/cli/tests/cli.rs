use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_tdcf");

fn tdcf(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = tdcf(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn f(v: &Value) -> f64 {
    match v {
        Value::Number(n) => n.as_f64().unwrap(),
        Value::String(s) => tdcf_core::extended::parse(s).unwrap(),
        other => panic!("not a number: {other}"),
    }
}

struct Sim {
    _dir: tempfile::TempDir,
    path: PathBuf,
}

impl Sim {
    fn new(seed: &str, n: &str) -> Self {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().to_path_buf();
        ok(&[
            "simulate",
            "--n-tar",
            n,
            "--n-non",
            n,
            "--n-spoof",
            n,
            "--seed",
            seed,
            "--out",
            path.to_str().unwrap(),
        ]);
        Sim { _dir: dir, path }
    }

    fn file(&self, name: &str) -> String {
        self.path.join(name).to_str().unwrap().to_string()
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn reject_all_asv_policy_gives_one() {
    let sim = Sim::new("1", "2000");
    let r = json(&[
        "evaluate",
        "--asv",
        &sim.file("asv_scores.txt"),
        "--cm",
        &sim.file("cm_scores.txt"),
        "--policy",
        "fixed:+inf",
    ]);
    assert_eq!(f(&r["tdcf"]["min_normalized"]), 1.0);
    assert_eq!(r["asv_operating_point"]["threshold"], "inf");
    assert_eq!(r["asv_operating_point"]["policy"], "fixed:inf");
}

#[test]
fn report_has_the_documented_keys() {
    let sim = Sim::new("2", "2000");
    let r = json(&[
        "evaluate",
        "--asv",
        &sim.file("asv_scores.txt"),
        "--cm",
        &sim.file("cm_scores.txt"),
        "--policy",
        "min-c0",
        "--per-attack",
    ]);
    for key in [
        "manifest",
        "cost_model",
        "asv_operating_point",
        "coefficients",
        "tdcf",
        "flags",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    for key in ["raw", "default", "normalized", "min_normalized", "argmin"] {
        assert!(r["tdcf"].get(key).is_some(), "missing tdcf.{key}");
    }
    let m = &r["manifest"];
    assert_eq!(m["subcommand"], "evaluate");
    assert_eq!(m["timestamp"], "2023-11-14T22:13:20Z");
    assert_eq!(m["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["per_attack"][0]["attack_id"], "SIM");
    let floor = f(&r["references"]["asv_floor"]["normalized"]);
    assert!(floor <= f(&r["tdcf"]["min_normalized"]));
    assert_eq!(f(&r["references"]["default_cm"]["normalized"]), 1.0);
}

fn all_numbers_finite(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.as_f64().is_some_and(f64::is_finite),
        Value::String(_) | Value::Bool(_) | Value::Null => true,
        Value::Array(a) => a.iter().all(all_numbers_finite),
        Value::Object(o) => o.values().all(all_numbers_finite),
    }
}

#[test]
fn sweep_minimum_equals_joint_search() {
    let sim = Sim::new("3", "60");
    let (asv, cm) = (sim.file("asv_scores.txt"), sim.file("cm_scores.txt"));
    let csv = ok(&["sweep", "--asv", &asv, "--cm", &cm]);
    let mut lines = csv.lines();
    let width = lines.next().unwrap().split(',').count();
    let mut best = f64::INFINITY;
    let mut rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), width);
        for c in &cells[1..] {
            best = best.min(c.parse::<f64>().unwrap());
        }
        rows += 1;
    }
    assert!(rows > 100);
    let r = json(&["evaluate", "--asv", &asv, "--cm", &cm, "--policy", "min"]);
    assert_eq!(r["tdcf"]["variant"], "unconstrained");
    assert_eq!(f(&r["tdcf"]["min_normalized"]), best);
    assert!(all_numbers_finite(&r));
}

#[test]
fn select_thresholds_on_identical_dev_and_eval() {
    let sim = Sim::new("4", "3000");
    let (asv, cm) = (sim.file("asv_scores.txt"), sim.file("cm_scores.txt"));
    let r = json(&[
        "select-thresholds",
        "--dev-asv",
        &asv,
        "--dev-cm",
        &cm,
        "--eval-asv",
        &asv,
        "--eval-cm",
        &cm,
    ]);
    assert_eq!(f(&r["tdcf"]["normalized"]), f(&r["tdcf"]["min_normalized"]));
    let cols = r["comparison"].as_array().unwrap();
    assert_eq!(cols.len(), 4);
    assert_eq!(f(&cols[3]["normalized"]), f(&cols[2]["normalized"]));
    assert_eq!(cols[0]["asv_policy"], "eer_eval");
}

#[test]
fn select_thresholds_on_shifted_eval_is_worse_than_oracle() {
    let dev = Sim::new("5", "3000");
    let dir = tempfile::tempdir().unwrap();
    // shift every CM score on the eval side
    let shifted: String = fs::read_to_string(dev.path.join("cm_scores.txt"))
        .unwrap()
        .lines()
        .map(|l| {
            let mut f: Vec<String> = l.split_whitespace().map(String::from).collect();
            f[2] = (f[2].parse::<f64>().unwrap() + 6.0).to_string();
            f.join(" ") + "\n"
        })
        .collect();
    let eval_cm = write(dir.path(), "cm.txt", &shifted);
    let asv = dev.file("asv_scores.txt");
    let r = json(&[
        "select-thresholds",
        "--dev-asv",
        &asv,
        "--dev-cm",
        &dev.file("cm_scores.txt"),
        "--eval-asv",
        &asv,
        "--eval-cm",
        &eval_cm,
    ]);
    assert!(f(&r["tdcf"]["normalized"]) > f(&r["tdcf"]["min_normalized"]));
}

#[test]
fn coefficient_csv_limits_and_per_attack() {
    let dir = tempfile::tempdir().unwrap();
    let asv = write(
        dir.path(),
        "asv.txt",
        "t1 target 2\nt2 target 3\nn1 nontarget 0\ns1 spoof 1 A01\ns2 spoof 2.5 A02\n",
    );
    let csv = ok(&["coefficients", "--asv", &asv]);
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|l| {
            l.split(',')
                .map(|x| tdcf_core::extended::parse(x).unwrap())
                .collect()
        })
        .collect();
    assert_eq!(rows[0][0], f64::NEG_INFINITY);
    assert_eq!(rows.last().unwrap()[1..], [0.9405, 0.0, 0.0]);
    assert!(rows.windows(2).all(|w| w[1][3] <= w[0][3]));

    let per = ok(&["coefficients", "--asv", &asv, "--per-attack"]);
    assert!(per.starts_with("attack_id,tau_asv,c0,c1,c2\n"));
    assert!(per.lines().any(|l| l.starts_with("A01,")));
    assert!(per.lines().any(|l| l.starts_with("A02,")));

    let out = dir.path().join("out");
    ok(&[
        "coefficients",
        "--asv",
        &asv,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(out.join("coefficients.csv").exists());
    assert!(out.join("coefficients.manifest.json").exists());
}

#[test]
fn simulate_is_deterministic_per_seed() {
    let (a, b, c) = (
        Sim::new("9", "500"),
        Sim::new("9", "500"),
        Sim::new("10", "500"),
    );
    for name in ["asv_scores.txt", "cm_scores.txt", "simulation.json"] {
        assert_eq!(
            fs::read(a.path.join(name)).unwrap(),
            fs::read(b.path.join(name)).unwrap()
        );
    }
    assert_ne!(
        fs::read(a.path.join("asv_scores.txt")).unwrap(),
        fs::read(c.path.join("asv_scores.txt")).unwrap()
    );
}

#[test]
fn simulate_writes_the_analytic_surface() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "simulate",
        "--n-tar",
        "10",
        "--surface",
        "21",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let csv = fs::read_to_string(dir.path().join("analytic_surface.csv")).unwrap();
    assert_eq!(csv.lines().count(), 22);
    assert!(csv.lines().all(|l| l.split(',').count() == 22));
}

#[test]
fn missing_spoof_trials_in_cm_file_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let asv = write(dir.path(), "asv.txt", "a target 1\nb nontarget 0\n");
    let cm = write(dir.path(), "cm.txt", "a bonafide 1\nb bonafide 0\n");
    let out = tdcf(&["evaluate", "--asv", &asv, "--cm", &cm]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no spoof trials"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let asv = write(
        dir.path(),
        "asv.txt",
        "# header\na target 1\nb nontarget nan\n",
    );
    let cm = write(dir.path(), "cm.txt", "a bonafide 1\nb spoof 0 A01\n");
    let out = tdcf(&["evaluate", "--asv", &asv, "--cm", &cm]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn degenerate_cost_model_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let asv = write(dir.path(), "asv.txt", "a target 1\nb nontarget 0\n");
    let cm = write(dir.path(), "cm.txt", "a bonafide 1\nb spoof 0 A01\n");
    let model = write(
        dir.path(),
        "cost.txt",
        "# everyone is an impostor\npi_tar = 0\npi_spoof = 0.5\nc_miss = 1\nc_fa = 10\nc_fa_spoof = 10\n",
    );
    let out = tdcf(&[
        "evaluate",
        "--asv",
        &asv,
        "--cm",
        &cm,
        "--cost-model",
        &model,
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn cost_model_file_is_used_and_digested() {
    let dir = tempfile::tempdir().unwrap();
    let asv = write(
        dir.path(),
        "asv.txt",
        "a target 1\nb nontarget 0\nc spoof 0.75 A01\n",
    );
    let cm = write(dir.path(), "cm.txt", "a bonafide 1\nb spoof 0 A01\n");
    let model = write(
        dir.path(),
        "cost.txt",
        "pi_tar: 0.5\npi_spoof: 0.25\nc_miss: 1\nc_fa: 1\nc_fa_spoof: 1\n",
    );
    let r = json(&[
        "evaluate",
        "--asv",
        &asv,
        "--cm",
        &cm,
        "--cost-model",
        &model,
    ]);
    assert_eq!(r["cost_model"]["source"], "file");
    assert_eq!(f(&r["cost_model"]["pi_non"]), 0.25);
    assert_eq!(r["manifest"]["inputs"][2]["role"], "cost_model");

    let out = tdcf(&[
        "evaluate",
        "--asv",
        &asv,
        "--cm",
        &cm,
        "--cost-model",
        &model,
        "--pi-spoof",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_flags_are_validation_errors() {
    assert_eq!(
        tdcf(&["evaluate", "--policy", "median"]).status.code(),
        Some(1)
    );
    assert_eq!(tdcf(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(tdcf(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let out = tdcf(&[
        "simulate",
        "--p-e-asv",
        "0.7",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn duplicate_trial_ids_warn() {
    let dir = tempfile::tempdir().unwrap();
    let asv = write(
        dir.path(),
        "asv.txt",
        "a target 1\na nontarget 0\nc spoof 0.75 A01\n",
    );
    let cm = write(dir.path(), "cm.txt", "a bonafide 1\nb spoof 0 A01\n");
    let out = tdcf(&["evaluate", "--asv", &asv, "--cm", &cm]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate trial id"));
}
