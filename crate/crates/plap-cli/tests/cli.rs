//! End-to-end tests of the binary: report schema, exit codes, JSON-only
//! stdout, function round trips, and thread-count invariance.

use std::path::Path;
use std::process::{Command, Output};

fn plap() -> Command {
    Command::new(env!("CARGO_BIN_EXE_plap"))
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

const P7: &str = "\
GRAPH v1
edge 1 2 1
edge 2 3 1
edge 3 4 1
edge 4 5 1
edge 5 6 1
edge 6 7 1
";

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout must be a single JSON document")
}

#[test]
fn verify_report_schema_and_pass() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p7.graph", P7);
    let f = write(
        dir.path(),
        "f.json",
        r#"{"1": 1, "2": 1, "3": 1, "4": 0, "5": 0, "6": 0, "7": 0}"#,
    );
    let out = plap()
        .args([
            "verify", "--graph", &graph, "--fn", &f, "--p", "1", "--nlambda",
            "0.3333333333333333",
        ])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "report.v1");
    assert_eq!(v["command"], "verify");
    assert_eq!(v["results"]["pass"], true);
    assert_eq!(v["results"]["method"], "subgradient-1");
    assert!(v["results"]["payload"]["feasible"].as_bool().unwrap());
}

#[test]
fn verify_reports_rayleigh_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p7.graph", P7);
    let f = write(
        dir.path(),
        "f.json",
        r#"{"1": 1, "2": 1, "3": 1, "4": 0, "5": 0, "6": 0, "7": 0}"#,
    );
    let out = plap()
        .args(["verify", "--graph", &graph, "--fn", &f, "--p", "1", "--nlambda", "0.5"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["results"]["pass"], false);
    assert_eq!(v["results"]["reason"], "rayleigh-mismatch");
}

#[test]
fn spectrum_witness_round_trips_into_verify() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p7.graph", P7);
    let out = plap()
        .args(["spectrum", "--graph", &graph, "--p", "1"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    let entries = v["results"]["certified_values"].as_array().unwrap();
    assert!(entries.len() >= 6);
    // Feed a reported witness back through verify.
    let witness = &entries[1];
    let f = write(
        dir.path(),
        "w.json",
        &serde_json::to_string(&witness["witness"]).unwrap(),
    );
    let nlambda = witness["nlambda"].as_f64().unwrap();
    let out = plap()
        .args([
            "verify",
            "--graph",
            &graph,
            "--fn",
            &f,
            "--p",
            "1",
            "--nlambda",
            &nlambda.to_string(),
        ])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["results"]["pass"], true);
}

#[test]
fn finite_p_spectrum_contains_known_diamond_values() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "diamond.graph",
        "GRAPH v1\nedge 1 2 1\nedge 1 4 1\nedge 2 3 1\nedge 2 4 1\nedge 3 4 1\n",
    );
    let out = plap()
        .args([
            "spectrum", "--graph", &graph, "--p", "3", "--restarts", "12", "--seed", "1",
        ])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    let lambdas: Vec<f64> = v["results"]["critical_values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|cv| cv["lambda"].as_f64().unwrap())
        .collect();
    for want in [0.0, 2.0, 6.0, 1.0 + (1.0 + 2f64.sqrt()).powi(2), 8.0] {
        assert!(
            lambdas.iter().any(|l| (l - want).abs() <= 1e-6 * want.max(1.0)),
            "missing {want} in {lambdas:?}"
        );
    }
}

#[test]
fn exit_code_2_on_missing_file_and_bad_input() {
    let out = plap()
        .args(["spectrum", "--graph", "/nonexistent.graph", "--p", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.graph", "GRAPH v1\nedge a b 0\n");
    let out = plap()
        .args(["spectrum", "--graph", &bad, "--p", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Missing interior values in the function JSON.
    let graph = write(dir.path(), "p7.graph", P7);
    let f = write(dir.path(), "short.json", r#"{"1": 1}"#);
    let out = plap()
        .args(["verify", "--graph", &graph, "--fn", &f, "--p", "1", "--nlambda", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_3_on_nonconvergence() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "dirichlet.graph",
        "GRAPH v1\nnode b boundary\nedge a b 1\nedge a c 1\nedge c d 1\n",
    );
    let out = plap()
        .args([
            "spectrum",
            "--graph",
            &graph,
            "--p",
            "3",
            "--restarts",
            "1",
            "--seed",
            "1",
            "--max-iters",
            "1",
            "--tol",
            "1e-300",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_code_4_on_cap_exceeded() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("GRAPH v1\n");
    for i in 1..18 {
        text.push_str(&format!("edge {} {} 1\n", i, i + 1));
    }
    let graph = write(dir.path(), "p18.graph", &text);
    let out = plap()
        .args(["geometry", "--graph", &graph, "--quantity", "cheeger", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn geometry_and_partition_values() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p7.graph", P7);
    let out = plap()
        .args(["geometry", "--graph", &graph, "--quantity", "cheeger", "--k", "3"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert!((v["results"]["value"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-12);

    let out = plap()
        .args(["geometry", "--graph", &graph, "--quantity", "packing", "--k", "4"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["results"]["value"].as_f64().unwrap(), 1.0);

    let out = plap()
        .args([
            "partition", "--graph", &graph, "--k", "2", "--mode", "nonadjacent", "--order", "1",
        ])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["results"]["inverse_value"].as_f64().unwrap(), 3.0);
}

#[test]
fn nodal_counts_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p7.graph", P7);
    let f = write(
        dir.path(),
        "f.json",
        r#"{"1": 1, "2": 1, "3": 1, "4": 0, "5": -1, "6": -1, "7": -1}"#,
    );
    let out = plap()
        .args(["nodal", "--graph", &graph, "--fn", &f])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["results"]["strong_count"], 2);
    assert_eq!(v["results"]["weak_count"], 2);
    assert_eq!(v["results"]["perfect_count"], 2);
    assert_eq!(v["results"]["zero_set"][0], "4");
}

#[test]
fn dual_command_for_smooth_and_degenerate_p() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "diamond.graph",
        "GRAPH v1\nedge 1 2 1\nedge 1 4 1\nedge 2 3 1\nedge 2 4 1\nedge 3 4 1\n",
    );
    let f = write(dir.path(), "f.json", r#"{"1": 1, "2": 0, "3": -1, "4": 0}"#);
    let out = plap()
        .args(["dual", "--graph", &graph, "--fn", &f, "--p", "2"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert!(v["results"]["edge_residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["results"]["kernel_dims"]["d1"], 1);
    assert_eq!(v["results"]["kernel_dims"]["d2"], 2);

    let graph = write(dir.path(), "p7.graph", P7);
    let f = write(
        dir.path(),
        "ind.json",
        r#"{"1": 1, "2": 1, "3": 1, "4": 0, "5": 0, "6": 0, "7": 0}"#,
    );
    let out = plap()
        .args(["dual", "--graph", &graph, "--fn", &f, "--p", "1"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["results"]["q"], "inf");
    assert_eq!(v["results"]["edge_subgradient_verified"], true);
}

#[test]
fn scan_emits_csv_and_is_thread_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p7.graph", P7);
    let csv_path = dir.path().join("scan.csv");
    let run = |threads: &str| -> serde_json::Value {
        let out = plap()
            .args([
                "scan",
                "--graph",
                &graph,
                "--grid",
                "2,3",
                "--k-track",
                "2",
                "--seed",
                "5",
                "--restarts",
                "6",
                "--csv",
                &csv_path.display().to_string(),
                "--threads",
                threads,
            ])
            .output()
            .unwrap();
        let mut v = stdout_json(&out);
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a["results"], b["results"], "output must not depend on the pool size");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("p,lambda_1,lambda_2"));
    assert_eq!(csv.lines().count(), 3);
}
