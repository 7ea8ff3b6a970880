//! End-to-end tests driving the compiled `regraph` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn regraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn generate_petersen_roundtrips_through_census() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("petersen.json");
    let out = regraph(&["generate", "--kind", "petersen", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc = fs::read_to_string(&path).unwrap();
    assert!(doc.contains("\"vertex_count\": 10"));

    let census = regraph(&["census", "--graph", path.to_str().unwrap(), "--l-max", "6"]);
    assert!(census.status.success());
    let text = stdout(&census);
    assert!(text.starts_with("l,p_l,gp_l\n"));
    // Girth 5: no geodesics shorter than 5, and 120 of length 5 and 6.
    assert!(text.contains("\n3,0,0\n"), "{text}");
    assert!(text.contains("\n4,150,0\n"), "{text}");
    assert!(text.contains("\n5,120,120\n"), "{text}");
}

#[test]
fn random_regular_generation_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = regraph(&[
            "generate",
            "--kind",
            "random-regular",
            "--n",
            "12",
            "--degree",
            "3",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn census_k4_counts() {
    let out = regraph(&["census", "--kind", "complete", "--n", "4", "--l-max", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\n3,24,24\n"), "{text}");
    assert!(text.contains("\n6,732,96\n"), "{text}");
}

#[test]
fn census_json_uses_string_counts() {
    let out = regraph(&[
        "census", "--kind", "complete", "--n", "4", "--l-max", "3", "--format", "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[3]["p"], "24");
    assert_eq!(rows[3]["gp"], "24");
}

#[test]
fn verify_k4_passes_all_stages() {
    let out = regraph(&["verify", "--kind", "complete", "--n", "4"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["config"]["graph"], "complete-4");
    for stage in report["stages"].as_array().unwrap() {
        assert_eq!(stage["status"], "pass", "{stage}");
    }
}

#[test]
fn verify_cycle_includes_polygon_stage() {
    let out = regraph(&["verify", "--kind", "cycle", "--n", "5"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = report["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"polygon_identity"), "{names:?}");
}

#[test]
fn loose_eigen_tolerance_fails_with_exit_one() {
    let out = regraph(&["verify", "--kind", "petersen", "--eigen-tol", "1e-1"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], false);
    let inversion = report["stages"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == "gp_inversion")
        .unwrap();
    assert_eq!(inversion["status"], "fail");
}

#[test]
fn invalid_graph_document_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{"name": "bad", "vertex_count": 4, "edges": [[0,1],[1,2],[2,0],[2,3]]}"#,
    )
    .unwrap();
    let out = regraph(&["census", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not regular"), "{err}");
}

#[test]
fn unknown_document_key_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.json");
    fs::write(
        &path,
        r#"{"name": "x", "vertex_count": 3, "edges": [[0,1],[1,2],[2,0]], "extra": true}"#,
    )
    .unwrap();
    let out = regraph(&["verify", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_source_exits_two() {
    let out = regraph(&["census"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn density_grid_integrates_to_vertex_count() {
    let out = regraph(&["density", "--kind", "petersen", "--grid", "201"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<(f64, f64, f64)> = text
        .lines()
        .skip(1)
        .map(|line| {
            let mut it = line.split(',').map(|v| v.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 201);
    let band = 2.0 * 2.0_f64.sqrt();
    for &(s, _, _) in &rows {
        assert!(s.abs() < band, "grid point {s} outside the open band");
    }
    // Trapezoid over the contractible density recovers the vertex count; the
    // full density adds a truncated oscillatory series whose band integral
    // vanishes term by term but needs a finer grid to quadrature away.
    let mut mass = 0.0;
    for w in rows.windows(2) {
        mass += 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0);
    }
    assert!((mass - 10.0).abs() < 1e-3, "integrated mass {mass}");
}

#[test]
fn series_dump_matches_catalan_pattern() {
    let out = regraph(&["series", "--q", "2", "--order", "6", "--series", "p-tree"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("exponent,coefficient\n"));
    // Closed tree walks at q = 2: 1, 0, 3, 0, 15, 0, 87.
    assert!(text.contains("\n2,3\n"), "{text}");
    assert!(text.contains("\n4,15\n"), "{text}");
    assert!(text.contains("\n6,87\n"), "{text}");
}

#[test]
fn verify_report_written_atomically_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = regraph(&[
        "verify", "--kind", "cycle", "--n", "6", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["pass"], true);
    assert!(Path::new(&path).exists());
    // No stray temp files left behind.
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
