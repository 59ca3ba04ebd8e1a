//! End-to-end checks of the command-line surface: subcommands, flags,
//! output files, and exit codes (0 success, 1 usage, 2 config).

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wsn-lifetime"))
}

fn small_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("small.cfg");
    fs::write(
        &path,
        "area_side=200\nn_sensors=25\nn_supernodes=3\nn_targets=3\ne_init_sensor=0.01\n",
    )
    .unwrap();
    path
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "expected success for {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn run_writes_rounds_summary_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out_dir = dir.path().join("out");
    let out = run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "7",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("lifetime="), "{stdout}");
    assert!(stdout.contains("seed=7"), "{stdout}");

    let rounds = fs::read_to_string(out_dir.join("rounds.csv")).unwrap();
    assert!(rounds.starts_with("round,monitors,relays,active_total,round_energy_J,total_remaining_J\n"));
    let summary = fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    assert!(summary.starts_with("lifetime,termination_reason,seed,mode,"));
    let manifest = fs::read_to_string(out_dir.join("manifest.cfg")).unwrap();
    assert!(manifest.contains("rng_seed=7"));
    assert!(manifest.contains("# command=run"));
}

#[test]
fn manifest_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let first = dir.path().join("first");
    run_ok(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "3",
        "--out",
        first.to_str().unwrap(),
    ]);
    // Re-run straight from the emitted manifest; bytes must match.
    let second = dir.path().join("second");
    run_ok(&[
        "run",
        "--config",
        first.join("manifest.cfg").to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(
        fs::read(first.join("rounds.csv")).unwrap(),
        fs::read(second.join("rounds.csv")).unwrap()
    );
    assert_eq!(
        fs::read(first.join("summary.csv")).unwrap(),
        fs::read(second.join("summary.csv")).unwrap()
    );
}

#[test]
fn batch_writes_aggregate_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out_dir = dir.path().join("batch");
    run_ok(&[
        "batch",
        "--runs",
        "3",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "5",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let batch = fs::read_to_string(out_dir.join("batch.csv")).unwrap();
    assert_eq!(batch.lines().count(), 4); // header + 3 runs
    assert!(batch.lines().nth(1).unwrap().starts_with("1,5,"));
    let summary = fs::read_to_string(out_dir.join("batch_summary.csv")).unwrap();
    assert!(summary.starts_with("runs,mean_lifetime,sd,min,max\n3,"));
    assert!(out_dir.join("round_means.csv").exists());
    assert!(out_dir.join("manifest.cfg").exists());
}

#[test]
fn sweep_emits_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out_dir = dir.path().join("sweep");
    run_ok(&[
        "sweep",
        "--var",
        "targets",
        "--from",
        "5",
        "--to",
        "40",
        "--step",
        "5",
        "--runs",
        "1",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let sweep = fs::read_to_string(out_dir.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = sweep.lines().collect();
    assert_eq!(lines[0], "var,value,mean_lifetime,sd,min,max,runs");
    assert_eq!(lines.len(), 9); // header + 8 points
    assert!(lines[1].starts_with("targets,5,"));
    assert!(lines[8].starts_with("targets,40,"));
}

#[test]
fn node_sweep_labels_rows_with_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let out_dir = dir.path().join("nodesweep");
    run_ok(&[
        "sweep",
        "--var",
        "nodes",
        "--from",
        "20",
        "--to",
        "30",
        "--step",
        "10",
        "--runs",
        "1",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    let sweep = fs::read_to_string(out_dir.join("sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 3);
    assert!(sweep.lines().nth(1).unwrap().starts_with("nodes,20,"));
}

#[test]
fn hidden_oracle_subcommand_reports_the_gap() {
    let out = run_ok(&["oracle", "--seed", "4"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("hop_mismatches=0"), "{stdout}");
}

#[test]
fn usage_errors_exit_1() {
    let out = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .args(["sweep", "--var", "targets", "--from", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1)); // missing --to/--step
    let out = bin().args(["batch", "--runs", "zero"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "r_comm=50\nr_sense=60\n").unwrap();
    let out = bin()
        .args(["run", "--config", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("r_comm"), "{stderr}");

    let out = bin()
        .args(["run", "--config", "/nonexistent/path.cfg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    let out = bin().args(["--help"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("run"));
    assert!(stdout.contains("batch"));
    assert!(stdout.contains("sweep"));
    assert!(!stdout.contains("oracle"), "oracle should stay hidden");

    let out = bin().args(["--version"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
