//! End-to-end runs of every subcommand.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn tessellab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tessellab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_result(args: &[&str]) -> (Value, Vec<u8>) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = tessellab(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "tessellab-report/1");
    (doc["result"].clone(), out.stdout)
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn every_subcommand_has_help() {
    for cmd in [
        "generate",
        "curvature",
        "cheeger",
        "growth",
        "spectrum",
        "eigenfunctions",
        "verify",
        "report",
    ] {
        let out = tessellab(&[cmd, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert!(
            String::from_utf8_lossy(&out.stdout).contains("Usage"),
            "{cmd}"
        );
    }
}

#[test]
fn generate_reproduces_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g44.json");
    let status = tessellab(&[
        "generate",
        "--family",
        "gpq",
        "--p",
        "4",
        "--q",
        "4",
        "--radius",
        "6",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    assert_eq!(
        std::fs::read(&out).unwrap(),
        std::fs::read(fixture("g44_r6.json")).unwrap()
    );
    let missing_q = tessellab(&[
        "generate",
        "--family",
        "gpq",
        "--p",
        "4",
        "--radius",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(missing_q.status.code(), Some(2));
    let spherical = tessellab(&[
        "generate",
        "--family",
        "gpq",
        "--p",
        "3",
        "--q",
        "5",
        "--radius",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(spherical.status.code(), Some(2));
}

#[test]
fn curvature_of_trihexagonal_tiling_is_flat() {
    let (result, _) = json_result(&["curvature", &path("trihex_r6.json")]);
    assert_eq!(result["b"], json!({"num": 0, "den": 1}));
    assert_eq!(result["a"], Value::Null);
    assert!(result.get("vertices").is_none());
    let (result, _) = json_result(&["curvature", "--per-vertex", &path("g37_r9.json")]);
    let vertices = result["vertices"].as_array().unwrap();
    assert!(!vertices.is_empty());
    assert!(vertices
        .iter()
        .all(|v| v["curvature"] == json!({"num": -1, "den": 14})));
}

#[test]
fn cheeger_on_tree() {
    let (result, _) = json_result(&["cheeger", "--cap", "6", &path("t3_r8.json")]);
    assert_eq!(result["bound_physical"], json!({"num": 1, "den": 1}));
    assert_eq!(result["bound_combinatorial"], json!({"num": 1, "den": 3}));
    assert_eq!(
        result["per_size"][5]["physical"],
        json!({"num": 4, "den": 3})
    );
    assert_eq!(result["bound_violations"], 0);
}

#[test]
fn growth_with_comparison() {
    let (result, _) = json_result(&["growth", &path("g66_r6.json")]);
    assert_eq!(result["spheres"], json!([1, 6, 30, 144, 690, 3306, 15840]));
    assert_eq!(result["bishop_probe"]["verdict"], "consistent");
    let (result, _) = json_result(&["growth", "--compare", "7,6", &path("g66_r6.json")]);
    assert_eq!(result["bishop_probe"]["verdict"], "consistent");
    // Degree 6 exceeds the comparison degree.
    let out = tessellab(&["growth", "--compare", "5,6", &path("g66_r6.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_kinds() {
    let (comb, _) = json_result(&["spectrum", "--radii", "1:3", &path("t3_r8.json")]);
    let (phys, _) = json_result(&[
        "spectrum",
        "--radii",
        "1:3",
        "--kind",
        "phys",
        &path("t3_r8.json"),
    ]);
    let c = comb["dirichlet"][0]["lambda0"].as_f64().unwrap();
    let p = phys["dirichlet"][0]["lambda0"].as_f64().unwrap();
    assert!((c - (1.0 - 1.0 / 3f64.sqrt())).abs() < 1e-10);
    assert!((p - 3.0 * c).abs() < 1e-10);
    assert_eq!(comb["consistent"], true);
    let out = tessellab(&["spectrum", "--radii", "3:1", &path("t3_r8.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eigenfunctions_on_trihexagonal_tiling() {
    let (result, _) = json_result(&[
        "eigenfunctions",
        "--region-radius",
        "3",
        &path("trihex_r6.json"),
    ]);
    let certs = result["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 4);
    for c in certs {
        assert_eq!(c["eigenvalue"], json!({"num": 3, "den": 2}));
        assert_eq!(c["verified"], true);
    }
    let (result, _) = json_result(&[
        "eigenfunctions",
        "--region-radius",
        "3",
        "--max-support",
        "5",
        &path("trihex_r6.json"),
    ]);
    assert!(result["certificates"].as_array().unwrap().is_empty());
    // The region's neighbourhood must be interior.
    let out = tessellab(&[
        "eigenfunctions",
        "--region-radius",
        "6",
        &path("trihex_r6.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = tessellab(&["verify", &path("t3_r8.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));

    // Negative tolerances make every tolerance check fail.
    let dir = tempfile::tempdir().unwrap();
    let tol = dir.path().join("tol.json");
    std::fs::write(
        &tol,
        r#"{"reference_decimal": -1, "identity": -1, "solver": 1e-9, "growth": 0.01}"#,
    )
    .unwrap();
    let out = tessellab(&[
        "verify",
        "--tol-profile",
        tol.to_str().unwrap(),
        &path("t3_r8.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let corrupt = dir.path().join("corrupt.json");
    let text = std::fs::read_to_string(fixture("g44_r6.json")).unwrap();
    std::fs::write(
        &corrupt,
        text.replacen("\"neighbors\":[1,", "\"neighbors\":[2,", 1),
    )
    .unwrap();
    let out = tessellab(&["verify", corrupt.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = tessellab(&["verify", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = tessellab(&["verify", "--tol-profile", "bogus", &path("t3_r8.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_lists_checks() {
    let (result, _) = json_result(&["verify", "--profile", "small", &path("g44_r6.json")]);
    let checks = result["checks"].as_array().unwrap();
    assert!(checks.len() > 10);
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    assert!(checks
        .iter()
        .all(|c| c["anchor"].as_str().is_some_and(|a| !a.is_empty())));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["report", &*path("g37_r9.json")],
        vec!["verify", "--seed", "3", &*path("trihex_r6.json")],
        vec!["growth", &*path("t3_r8.json")],
    ] {
        let args: Vec<&str> = args.iter().map(|s| &**s).collect();
        let (_, first) = json_result(&args);
        let (_, second) = json_result(&args);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn report_combines_modules() {
    let out = tessellab(&["report", "--cap", "4", &path("g44_r6.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "report");
    for key in ["truncation", "curvature", "cheeger", "growth", "spectrum"] {
        assert!(doc["result"].get(key).is_some(), "{key}");
    }
    assert_eq!(doc["result"]["truncation"]["family"], "gpq");
}
