//! End-to-end checks of the binary: flag handling, file outputs and exit
//! codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_merminpoly"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("merminpoly-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn scenario_prints_contexts() {
    let out = run(&["scenario", "--beta", "beta0", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cohomology_class"], 0);
    assert_eq!(v["contexts"]["C0_hor"][0], "m_00");
}

#[test]
fn vertices_beta0_writes_sixteen_rows() {
    let dir = tmp_dir("v0");
    let out = run(&[
        "vertices",
        "--beta",
        "beta0",
        "--out",
        dir.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.join("beta0_vertices.csv")).unwrap();
    assert_eq!(csv.lines().count(), 17, "header plus sixteen vertices");
    assert!(csv.lines().skip(1).all(|l| l.contains("deterministic")));
    let report: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("beta0_classification.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["bijection"], true);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn vertices_beta1_counts_types() {
    let dir = tmp_dir("v1");
    let out = run(&[
        "vertices",
        "--beta",
        "beta1",
        "--out",
        dir.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["enumerated"], 120);
    assert_eq!(v["type1"], 48);
    assert_eq!(v["type2"], 72);
    let csv = std::fs::read_to_string(dir.join("beta1_vertices.csv")).unwrap();
    assert_eq!(csv.lines().count(), 121);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn custom_class1_beta_also_gives_120() {
    let out = run(&[
        "vertices",
        "--beta",
        r#"{"C0_hor":1,"C1_hor":0,"C2_hor":0,"C0_ver":0,"C1_ver":0,"C2_ver":0}"#,
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["enumerated"], 120);
}

#[test]
fn graph_emits_dot_and_degrees() {
    let dir = tmp_dir("g0");
    let out = run(&[
        "graph",
        "--beta",
        "beta0",
        "--out",
        dir.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nodes"], 16);
    assert_eq!(v["edges"], 120);
    let dot = std::fs::read_to_string(dir.join("beta0_graph.dot")).unwrap();
    assert!(dot.starts_with("graph polytope {"));
    assert_eq!(dot.matches(" -- ").count(), 120);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn fine_flags_the_nonlocal_box() {
    // assemble the maximally nonlocal box file
    let dir = tmp_dir("fine");
    let path = dir.join("pr.json");
    let mut tables = serde_json::Map::new();
    for (key, parity) in [("x0y0", 0), ("x0y1", 0), ("x1y0", 0), ("x1y1", 1)] {
        let (even, odd) = if parity == 0 { ("1/2", "0") } else { ("0", "1/2") };
        tables.insert(
            key.to_string(),
            serde_json::json!({"00": even, "01": odd, "10": odd, "11": even}),
        );
    }
    std::fs::write(&path, serde_json::Value::Object(tables).to_string()).unwrap();
    let out = run(&["fine", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["chsh_satisfied"], false);
    assert_eq!(v["noncontextual"], false);
    assert_eq!(v["criteria_agree"], true);
    assert_eq!(v["chsh_values"][0], "3");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn lambda2_uniform_is_a_member() {
    let dir = tmp_dir("l2");
    let path = dir.join("uniform.json");
    let mut tables = serde_json::Map::new();
    for i in 0..3 {
        for j in 0..3 {
            tables.insert(
                format!("x{i}y{j}"),
                serde_json::json!({"00": "1/4", "01": "1/4", "10": "1/4", "11": "1/4"}),
            );
        }
    }
    std::fs::write(&path, serde_json::Value::Object(tables).to_string()).unwrap();
    let out = run(&["lambda2", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["operator_test_agrees"], true);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tmp_dir("bad");
    let path = dir.join("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["fine", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn signaling_input_exits_three() {
    let dir = tmp_dir("sig");
    let path = dir.join("signaling.json");
    // x0 marginal is 1 against y0 but 0 against y1
    let j = serde_json::json!({
        "x0y0": {"00": "1", "01": "0", "10": "0", "11": "0"},
        "x0y1": {"00": "0", "01": "0", "10": "1", "11": "0"},
        "x1y0": {"00": "1", "01": "0", "10": "0", "11": "0"},
        "x1y1": {"00": "1", "01": "0", "10": "0", "11": "0"},
    });
    std::fs::write(&path, j.to_string()).unwrap();
    let out = run(&["fine", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_subset_runs_and_reports() {
    let dir = tmp_dir("verify");
    let report_path = dir.join("report.json");
    let out = run(&[
        "verify-all",
        "--only",
        "ranks,structure",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[PASS] C08"));
    assert!(stdout.contains("[PASS] C13"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(v["all_pass"], true);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn unknown_criterion_rejected() {
    let out = run(&["verify-all", "--only", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stabilizer_orders_match_the_known_structure() {
    let out = run(&["stabilizer", "--beta", "beta1", "--vertex", "type1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 24);
    assert_eq!(v["dihedral_half_order"], 12);
    let out = run(&["stabilizer", "--beta", "beta1", "--vertex", "type2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 16);
    assert_eq!(v["dihedral_half_order"], 8);
}
