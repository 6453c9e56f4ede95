//! End-to-end tests of the `fivp` binary: exit codes, file formats, and
//! byte-level determinism of the emitted CSV/JSON artifacts.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn fivp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fivp"))
        .args(args)
        .env_remove("FIVP_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn plan_worked_example() {
    let out = fivp(&[
        "plan", "--alpha", "0.5", "--lambda", "0.2", "--p2", "6", "--zeta", "0.1", "--strict",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["a"].as_f64().unwrap() - 0.7272727272727273).abs() < 1e-12);
    assert!((v["p1"].as_f64().unwrap() - 1.6923076923076923).abs() < 1e-9);
    assert!((v["p3"].as_f64().unwrap() - 4.125).abs() < 1e-12);
}

#[test]
fn plan_order_violation_exits_2() {
    let out = fivp(&["plan", "--alpha", "0.5", "--lambda", "0.6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("order violation"), "{}", stderr(&out));
}

#[test]
fn plan_defaults_are_echoed_and_deterministic() {
    let a = fivp(&["plan", "--alpha", "0.5", "--lambda", "0.2"]);
    let b = fivp(&["plan", "--alpha", "0.5", "--lambda", "0.2"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    for key in ["alpha", "lambda", "p2", "zeta", "a", "p1", "p3"] {
        assert!(v[key].is_f64() || v[key].is_number(), "missing {key}");
    }
}

fn write_constant_problem(dir: &Path) -> std::path::PathBuf {
    let problem = fivp::problems::ProblemSpec::constant(1.0, 2.0, 0.5).unwrap();
    let path = dir.join("constant.json");
    fs::write(&path, problem.to_json_pretty()).unwrap();
    path
}

#[test]
fn solve_constant_problem_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let problem_path = write_constant_problem(dir.path());
    let prefix = dir.path().join("run");
    let args = [
        "solve",
        problem_path.to_str().unwrap(),
        "--T",
        "10",
        "--nodes",
        "512",
        "--out",
        prefix.to_str().unwrap(),
    ];
    let out = fivp(&args);
    assert!(out.status.success(), "{}", stderr(&out));

    let csv = fs::read_to_string(prefix.with_extension("csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "t,x,residual");
    let last = csv.lines().last().unwrap();
    let fields: Vec<f64> = last.split(',').map(|s| s.parse().unwrap()).collect();
    // closed form at t = 10: 1 + 4 sqrt(10)
    let exact = 1.0 + 4.0 * 10f64.sqrt();
    assert!((fields[0] - 10.0).abs() < 1e-12);
    assert!(((fields[1] - exact) / exact).abs() < 1e-3);

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(prefix.with_extension("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["mesh"]["nodes"].as_u64(), Some(512));
    assert_eq!(manifest["problem"]["family"].as_str(), Some("constant"));
    assert!(manifest["duration_seconds"].as_f64().unwrap() >= 0.0);

    // byte-identical CSV on re-run
    let again = fivp(&args);
    assert!(again.status.success());
    let csv2 = fs::read_to_string(prefix.with_extension("csv")).unwrap();
    assert_eq!(csv, csv2);
}

#[test]
fn solve_zero_forcing_keeps_x0() {
    let dir = tempfile::tempdir().unwrap();
    let problem = fivp::problems::ProblemSpec::constant(3.5, 0.0, 0.5).unwrap();
    let problem_path = dir.path().join("zero.json");
    fs::write(&problem_path, problem.to_json_pretty()).unwrap();
    let prefix = dir.path().join("zero");
    let out = fivp(&[
        "solve",
        problem_path.to_str().unwrap(),
        "--T",
        "5",
        "--nodes",
        "64",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = fs::read_to_string(prefix.with_extension("csv")).unwrap();
    for line in csv.lines().skip(1) {
        let x: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(x, 3.5);
    }
}

#[test]
fn solve_picard_mode_matches_step() {
    let dir = tempfile::tempdir().unwrap();
    let problem_path = write_constant_problem(dir.path());
    let step_prefix = dir.path().join("s");
    let picard_prefix = dir.path().join("p");
    for (mode, prefix) in [("step", &step_prefix), ("picard", &picard_prefix)] {
        let out = fivp(&[
            "solve",
            problem_path.to_str().unwrap(),
            "--T",
            "5",
            "--nodes",
            "128",
            "--mode",
            mode,
            "--out",
            prefix.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{mode}: {}", stderr(&out));
    }
    let read = |p: &Path| -> Vec<f64> {
        fs::read_to_string(p.with_extension("csv"))
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    let xs = read(&step_prefix);
    let xp = read(&picard_prefix);
    let dist = xs
        .iter()
        .zip(&xp)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(dist < 1e-9, "dist={dist}");
    // picard manifest records the sweep count
    let manifest: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(picard_prefix.with_extension("manifest.json")).unwrap(),
    )
    .unwrap();
    assert!(manifest["iterations"].as_u64().unwrap() >= 1);
}

#[test]
fn solve_missing_problem_file_fails() {
    let out = fivp(&[
        "solve",
        "/nonexistent/problem.json",
        "--T",
        "5",
        "--nodes",
        "64",
        "--out",
        "/tmp/never",
    ]);
    assert!(!out.status.success());
}

#[test]
fn sharpness_desk_scale_run() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("sharp");
    let args = [
        "sharpness",
        "--alpha",
        "0.5",
        "--lambda",
        "0.2",
        "--p2",
        "6",
        "--zeta",
        "0.1",
        "--epsilon",
        "0.1",
        "--T",
        "1e4",
        "--nodes-per-decade",
        "128",
        "--out",
        prefix.to_str().unwrap(),
    ];
    let out = fivp(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("verdict: pass"));

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(prefix.with_extension("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["verdict"].as_bool(), Some(true));
    assert!((report["lower_exponent"].as_f64().unwrap() - 0.21666666666666667).abs() < 1e-12);
    assert!((report["upper_exponent"].as_f64().unwrap() - 0.36363636363636365).abs() < 1e-12);
    // the eta0 > 7alpha/2 refinement cannot arm at alpha = 0.5
    assert_eq!(report["omega"]["armed"].as_bool(), Some(false));

    let ratio = fs::read_to_string(prefix.with_extension("ratio.csv")).unwrap();
    assert!(ratio.starts_with("decade,maxRatio\n"));
    assert_eq!(ratio.lines().count(), 5); // header + decades [1,10)...[1e3,1e4]

    // deterministic report bytes on re-run
    let report_bytes = fs::read(prefix.with_extension("report.json")).unwrap();
    let out2 = fivp(&args);
    assert!(out2.status.success());
    assert_eq!(report_bytes, fs::read(prefix.with_extension("report.json")).unwrap());
}

#[test]
fn sharpness_epsilon_too_large_exits_4() {
    let out = fivp(&[
        "sharpness", "--alpha", "0.5", "--lambda", "0.2", "--p2", "6", "--zeta", "0.1",
        "--epsilon", "1.5", "--T", "1e4", "--out", "/tmp/never",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("epsilon too large"), "{}", stderr(&out));
}

#[test]
fn sharpness_strict_regime_violation_exits_4() {
    let out = fivp(&[
        "sharpness", "--alpha", "0.8", "--lambda", "0.2", "--p2", "6", "--zeta", "0.1",
        "--epsilon", "0.1", "--T", "1e4", "--out", "/tmp/never",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("strict regime"), "{}", stderr(&out));
}

#[test]
fn out_dir_env_var_prefixes_relative_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let problem_path = write_constant_problem(dir.path());
    let out = Command::new(env!("CARGO_BIN_EXE_fivp"))
        .args([
            "solve",
            problem_path.to_str().unwrap(),
            "--T",
            "5",
            "--nodes",
            "64",
            "--out",
            "nested/run",
        ])
        .env("FIVP_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(dir.path().join("nested/run.csv").exists());
    assert!(dir.path().join("nested/run.manifest.json").exists());
}
