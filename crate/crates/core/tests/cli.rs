//! Black-box tests of the command-line interface: determinism, exit codes
//! and output formats.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_critwave"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn critwave")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("critwave-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn exponents_reports_known_values() {
    let out = run(&["exponents", "--n", "1", "--mu1", "2", "--mu2sq", "0", "--p", "3"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["p_fujita"], 3.0);
    assert_eq!(json["p_mu"], 3.0);
    assert_eq!(json["verdict"], "BlowupCriticalP1");
    assert_eq!(json["classification"], "parabolic-like");
    assert!(json["sign_conditions"].as_str().unwrap().contains("v0 >= 0"));
}

#[test]
fn exponents_transformed_mode() {
    let out = run(&["exponents", "--transformed", "--n", "2", "--ell", "1", "--k", "1"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["p1_nlk"], 2.0);
    let p0 = json["p0_nlk"].as_f64().unwrap();
    assert!((p0 - (5.0 + 73.0f64.sqrt()) / 6.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_2() {
    // missing required flags (clap)
    let out = run(&["exponents"]);
    assert_eq!(out.status.code(), Some(2));
    // admissibility violation: delta = 16 > 1
    let out = run(&["exponents", "--n", "2", "--mu1", "5", "--mu2sq", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown subcommand
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_failures_exit_1() {
    // an unattainable tolerance turns the kernel check into a failure
    let out = run(&[
        "verify-kernels",
        "--ell",
        "1",
        "--samples",
        "3",
        "--tol",
        "1e-30",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_kernels_deterministic_and_passing() {
    let args = ["verify-kernels", "--samples", "20", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "same seed must give identical bytes");
    let text = stdout(&first);
    assert!(text.starts_with("ell,max_deviation,pass\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",1")));
}

#[test]
fn simulate_deterministic_csv_and_manifest() {
    let dir = temp_dir("sim");
    let cfg = dir.join("run.cfg");
    fs::write(
        &cfg,
        "n = 1\nell = 0\nk = 0\np = 2\nepsilon = 1\nt_max = 10\ndx = 0.05\n",
    )
    .unwrap();
    let out_a = dir.join("a.csv");
    let out_b = dir.join("b.csv");
    for out in [&out_a, &out_b] {
        let res = run(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ]);
        assert!(res.status.success());
    }
    let a = fs::read(&out_a).unwrap();
    let b = fs::read(&out_b).unwrap();
    assert_eq!(a, b, "identical command must give byte-identical CSV");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("t,G,dG,G1,Lp_mass,sup_norm\n"));

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("a.csv.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "simulate");
    assert_eq!(manifest["config"]["p"], 2.0);
    for path in manifest["outputs"].as_array().unwrap() {
        assert!(PathBuf::from(path.as_str().unwrap()).exists());
    }
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn simulate_rejects_bad_config() {
    let dir = temp_dir("bad");
    let cfg = dir.join("bad.cfg");
    fs::write(&cfg, "n = 7\n").unwrap();
    let out = run(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    fs::write(&cfg, "zzz = 1\n").unwrap();
    let out = run(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn lifespan_table_format() {
    let dir = temp_dir("life");
    let cfg = dir.join("run.cfg");
    // linear run never crosses the threshold: censored rows
    fs::write(&cfg, "n = 1\nell = 0\nlinear = true\nt_max = 1\ndx = 0.05\n").unwrap();
    let out = run(&[
        "lifespan",
        "--config",
        cfg.to_str().unwrap(),
        "--epsilon",
        "0.5",
        "--epsilon",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "epsilon,T_est,censored");
    assert_eq!(lines.len(), 3);
    assert!(lines[1..].iter().all(|l| l.ends_with(",1")));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn solve1d_zero_data_gives_zeros() {
    let dir = temp_dir("s1d");
    let cfg = dir.join("run.cfg");
    fs::write(
        &cfg,
        "ell = 1\nt = 0.5\ndx = 0.05\nu0 = zero\nu1 = zero\nprobes = 7\n",
    )
    .unwrap();
    let out = run(&["solve1d", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("x,exact,fd,error\n"));
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 4);
        assert_eq!(fields[1].parse::<f64>().unwrap(), 0.0);
        assert_eq!(fields[2].parse::<f64>().unwrap(), 0.0);
    }
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn figure1_curves_cross_at_the_threshold() {
    let out = run(&["figure1", "--n", "1", "--points", "401"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut crossing = None;
    let mut prev: Option<(f64, f64, f64)> = None;
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line
            .split(',')
            .map(|s| if s == "inf" { f64::INFINITY } else { s.parse().unwrap() })
            .collect();
        let (mu1, s, f) = (v[0], v[1], v[2]);
        assert!((v[3] - s.max(f)).abs() <= 1e-15 * v[3].abs() || v[3] == s.max(f));
        if let Some((pm, ps, pf)) = prev {
            if mu1 > 1.0 && pm > 1.0 && (ps > pf) != (s > f) {
                crossing = Some(0.5 * (pm + mu1));
            }
        }
        prev = Some((mu1, s, f));
    }
    // dominant branch flips near mu1 = 4/3 in dimension 1
    let c = crossing.expect("branches must cross");
    assert!((c - 4.0 / 3.0).abs() < 0.01, "crossing at {c}");
}
