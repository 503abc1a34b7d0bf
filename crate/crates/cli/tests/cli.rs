use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_monodromy-lab"));
    c.env_remove("MONODROMY_LAB_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn repo(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn schema_validator() -> jsonschema::JSONSchema {
    let text = fs::read_to_string(repo("schema/certificate.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

#[test]
fn verify_default_passes_every_check() {
    let o = run(&["verify"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    for r in rows {
        let cells: Vec<&str> = r.split(',').collect();
        assert_eq!(cells[3], "PASS", "{r}");
        assert!(
            cells[1].parse::<f64>().unwrap() < cells[2].parse::<f64>().unwrap(),
            "{r}"
        );
    }
}

#[test]
fn verify_over_tight_tolerance_fails() {
    let o = run(&["verify", "--tol", "jacobi=1e-20", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["pass"], false);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["jacobi"]);
}

#[test]
fn verify_config_errors_exit_2() {
    assert_eq!(code(&run(&["verify", "--tol", "jacobii=1e-3"])), 2);
    assert_eq!(code(&run(&["verify", "--tol", "jacobi"])), 2);
    assert_eq!(code(&run(&["verify", "--tol", "jacobi=abc"])), 2);
    assert_eq!(code(&run(&["verify", "--format", "xml"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn pendulum_report_is_schema_valid_and_round_trips() {
    let o = run(&["pendulum", "--epsilon", "0.05", "--samples", "2048", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(schema_validator().is_valid(&v));
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    let d: f64 = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("\"mean_t\": "))
        .unwrap()
        .trim_end_matches(',')
        .parse()
        .unwrap();
    assert_eq!(d, v["certificate"]["mean_t"].as_f64().unwrap());

    let c = &v["certificate"];
    let delta = c["delta_theta_hat"].as_f64().unwrap();
    let m = c["m"].as_i64().unwrap();
    // The traced variation is a unit; m and the matrices follow from it.
    assert!((delta.abs() - 1.0).abs() < 0.005, "delta = {delta}");
    assert_eq!(m, -(delta.round() as i64));
    assert_eq!(c["classical_matrix"], serde_json::json!([[1, m], [0, 1]]));
    assert_eq!(c["quantum_matrix"], serde_json::json!([[1, 0], [-m, 1]]));
    assert_eq!(c["gate"]["quarter_turns"].as_i64().unwrap(), m.rem_euclid(4));
    assert!(c["delta_t"].as_f64().unwrap().abs() < 1e-7 * c["mean_t"].as_f64().unwrap());
    assert_eq!(v["provenance"]["config"]["center"], serde_json::json!([0.0, 1.0]));
}

fn delta_of(args: &[&str]) -> f64 {
    let mut full = vec!["pendulum", "--format", "json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    json(&o)["certificate"]["delta_theta_hat"].as_f64().unwrap()
}

#[test]
fn pendulum_control_turns_and_orientation() {
    let one = delta_of(&[]);
    assert!(delta_of(&["--center", "0.3,0.5"]).abs() < 0.005);
    assert!((delta_of(&["--turns", "2"]) - 2.0 * one).abs() < 0.01);
    assert!((delta_of(&["--turns", "-1"]) + one).abs() < 0.005);
}

#[test]
fn pendulum_outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [a.path(), b.path()] {
        let o = run(&["pendulum", "--out", d.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    for f in ["trace.csv", "certificate.json"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
    let csv = fs::read_to_string(a.path().join("trace.csv")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().ends_with("schema=1"));
    assert_eq!(
        lines.next().unwrap(),
        "t,j,h,x_minus,x_plus,x_zero,theta_raw,T,theta_hat_unwrapped"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2049);
    // Closure row sits one full turn after the first.
    let (first, last) = (&rows[0], &rows[2048]);
    assert!((last[0] - first[0] - std::f64::consts::TAU).abs() < 1e-12);
    assert_eq!(first[1..8], last[1..8]);
}

#[test]
fn pendulum_failure_leaves_no_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    // Passes straight through the focus-focus value: refinement cannot converge.
    let o = run(&[
        "pendulum",
        "--center",
        "0.05,1",
        "--samples",
        "256",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(!out.exists());
    // Leaves the region of motion.
    let o = run(&["pendulum", "--center", "0,-0.98", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!out.exists());
}

#[test]
fn pendulum_rejects_bad_run_config() {
    for args in [
        ["pendulum", "--epsilon", "0.2"],
        ["pendulum", "--epsilon", "0"],
        ["pendulum", "--samples", "1000"],
        ["pendulum", "--samples", "128"],
        ["pendulum", "--turns", "0"],
        ["pendulum", "--center", "0.3"],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
}

#[test]
fn gate_examples() {
    let o = run(&["gate", "--m", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["gate"], "diag(1, i)");
    assert_eq!(v["classical_matrix"], serde_json::json!([[1, 1], [0, 1]]));
    assert_eq!(v["quantum_matrix"], serde_json::json!([[1, 0], [-1, 1]]));
    assert!(v["theta_residual"].as_f64().unwrap() < 1e-12);

    let v = json(&run(&["gate", "--m", "4", "--format", "json"]));
    assert_eq!(v["gate"], "diag(1, 1)");
    assert_eq!(v["quarter_turns"], 0);

    let v = json(&run(&["gate", "--m", "-12", "--format", "json"]));
    assert!(v["theta_residual"].is_null());
}

#[test]
fn gate_from_certificate_matches_its_m() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["pendulum", "--out", dir.path().to_str().unwrap()])), 0);
    let cert = dir.path().join("certificate.json");
    let m = serde_json::from_str::<Value>(&fs::read_to_string(&cert).unwrap()).unwrap()["certificate"]["m"]
        .as_i64()
        .unwrap();
    let from_file = run(&["gate", "--certificate", cert.to_str().unwrap()]);
    let direct = run(&["gate", "--m", &m.to_string()]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, direct.stdout);
}

#[test]
fn gate_usage_errors() {
    assert_eq!(code(&run(&["gate"])), 2);
    assert_eq!(code(&run(&["gate", "--m", "one"])), 2);
    assert_eq!(code(&run(&["gate", "--m", "1", "--tau", "0,-1"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bogus = dir.path().join("c.json");
    fs::write(&bogus, "{\"schema\": 1}").unwrap();
    assert_eq!(code(&run(&["gate", "--certificate", bogus.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["gate", "--certificate", "/nonexistent/c.json"])), 2);
}

#[test]
fn braid_bundled_loops() {
    let o = run(&["braid", repo("data/loop_c2.txt").to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["permutation"], serde_json::json!([0, 2, 1]));
    assert_ne!(v["word"], "e");
    assert_eq!(v["det"], 1);

    let v = json(&run(&[
        "braid",
        repo("data/loop_constant.txt").to_str().unwrap(),
        "--format",
        "json",
    ]));
    assert_eq!(v["permutation"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["word"], "e");
    assert_eq!(v["matrix"], serde_json::json!([[1, 0], [0, 1]]));
}

fn coarse_loop(dir: &Path, radius: f64) -> PathBuf {
    // Sixteen samples of c = 2.5 + r e^{it} for x³ − 3x + c.
    let p = dir.join(format!("coarse_{radius}.txt"));
    let mut s = String::from("t_count=16\n");
    for k in 0..16 {
        let a = std::f64::consts::TAU * k as f64 / 16.0;
        s.push_str(&format!(
            "1 0 0 0 -3 0 {} {}\n",
            2.5 + radius * a.cos(),
            radius * a.sin()
        ));
    }
    fs::write(&p, s).unwrap();
    p
}

#[test]
fn braid_coarse_loop_is_refined() {
    let dir = tempfile::tempdir().unwrap();
    let p = coarse_loop(dir.path(), 0.52);
    let v = json(&run(&["braid", p.to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["permutation"], serde_json::json!([0, 2, 1]));
    assert!(v["refinement_depth"].as_u64().unwrap() >= 1);
    assert_eq!(
        v["samples"].as_u64().unwrap(),
        16 << v["refinement_depth"].as_u64().unwrap()
    );
}

#[test]
fn braid_unresolved_after_max_depth_exits_1() {
    // Passes 1e-4 from the double-root value c = 2.
    let dir = tempfile::tempdir().unwrap();
    let p = coarse_loop(dir.path(), 0.5001);
    assert_eq!(code(&run(&["braid", p.to_str().unwrap()])), 1);
}

#[test]
fn braid_corrupt_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("a", "t_count=3\n1 0 0 1\n1 0 0\n1 0 0 1\n"),
        ("b", "n=2\n1 0 0 1\n1 0 0 1\n"),
        ("c", "t_count=4\n1 0 0 1\n"),
        ("d", ""),
    ] {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        assert_eq!(code(&run(&["braid", p.to_str().unwrap()])), 2, "{name}");
    }
    assert_eq!(code(&run(&["braid", "/nonexistent/loop.txt"])), 2);
}

#[test]
fn curve_and_theta_queries() {
    let v = json(&run(&["curve", "--g2", "4", "--g3", "0", "--format", "json"]));
    assert_eq!(v["roots"], serde_json::json!([1.0, 0.0, -1.0]));
    assert!((v["tau"][1].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["k_sq"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(code(&run(&["curve", "--g2", "3", "--g3", "1"])), 2);
    assert_eq!(code(&run(&["curve", "--g2", "-1", "--g3", "1"])), 2);

    let o = run(&["theta", "--z", "0", "--tau", "0,1", "--k", "2", "--j", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("level_theta[2,0]"));
    assert_eq!(
        code(&run(&["theta", "--z", "0", "--tau", "0,1", "--k", "2", "--j", "2"])),
        2
    );
    assert_eq!(code(&run(&["theta", "--z", "0", "--tau", "0,0"])), 2);
}

#[test]
fn thread_cap_env() {
    let ok = bin()
        .env("MONODROMY_LAB_THREADS", "2")
        .args(["gate", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&ok), 0);
    let bad = bin()
        .env("MONODROMY_LAB_THREADS", "0")
        .args(["gate", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
}
