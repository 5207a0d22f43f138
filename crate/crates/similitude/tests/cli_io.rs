//! End-to-end exercises of the command-line surface: scene files in, text,
//! JSON, SVG, and exit codes out. Runs both the in-process dispatcher and
//! the compiled binary.

use std::path::PathBuf;
use std::process::Command;
use std::sync::atomic::{AtomicU32, Ordering};

use similitude::cli;

fn run_cli(args: &[&str]) -> (i32, String) {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let code = cli::run(&owned, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

static COUNTER: AtomicU32 = AtomicU32::new(0);

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let unique = COUNTER.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!(
        "similitude-test-{}-{unique}-{name}",
        std::process::id()
    ));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

const ALPHA_SCENE: &str = r#"{"similarity": {"kind": "direct", "scale": 2.0, "angle_deg": 90.0, "translation": [4.0, 0.0]}}"#;
const BETA_SCENE: &str = r#"{"similarity": {"kind": "indirect", "scale": 2.0, "angle_deg": 0.0, "translation": [3.0, 0.0]}}"#;
const DILATION_SCENE: &str = r#"{"similarity": {"kind": "direct", "scale": 3.0, "angle_deg": 0.0, "translation": [-4.0, -6.0]}}"#;
const ROTATION_SCENE: &str = r#"{"similarity": {"kind": "direct", "scale": 1.0, "angle_deg": 90.0, "translation": [1.0, 0.0]}}"#;
const WORKED_CORRESPONDENCE: &str = r#"{"correspondence": {
    "P": [0, 0], "Q": [4, 0], "R": [4, 2],
    "P'": [4, 0], "Q'": [4, 8], "R'": [0, 8]}}"#;

#[test]
fn classify_prints_both_forms() {
    let scene = temp_file("alpha.json", ALPHA_SCENE);
    let (code, out) = run_cli(&["classify", scene.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "stretch_rotation center=(0.8,1.6) ratio=2 angle=90");
    let json: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(json["class"], "stretch_rotation");
    assert_eq!(json["is_dilatation"], false);
    assert!((json["center"][0].as_f64().unwrap() - 0.8).abs() < 1e-12);
}

#[test]
fn classify_identity_scene() {
    let scene = temp_file(
        "id.json",
        r#"{"similarity": {"kind": "direct", "scale": 1.0, "angle_deg": 0.0, "translation": [0, 0]}}"#,
    );
    let (code, out) = run_cli(&["classify", scene.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "identity");
}

#[test]
fn classify_rejects_non_similar_correspondence_with_exit_3() {
    let scene = temp_file(
        "bad.json",
        r#"{"correspondence": {"P": [0,0], "Q": [1,0], "R": [0,1],
                              "P'": [0,0], "Q'": [2,0], "R'": [0,3]}}"#,
    );
    let (code, _) = run_cli(&["classify", scene.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn parse_errors_exit_2() {
    let scene = temp_file("broken.json", "{ not json");
    let (code, _) = run_cli(&["classify", scene.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _) = run_cli(&["classify", "/nonexistent/scene.json"]);
    assert_eq!(code, 2);
    let (code, _) = run_cli(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _) = run_cli(&[]);
    assert_eq!(code, 2);
}

#[test]
fn fixpoint_methods_agree_on_the_reference_scene() {
    let scene = temp_file("alpha.json", ALPHA_SCENE);
    let path = scene.to_str().unwrap();
    for method in ["auto", "algorithm1", "theorem", "algebraic"] {
        let (code, out) = run_cli(&["fixpoint", path, "--method", method]);
        assert_eq!(code, 0, "method {method}");
        assert!(out.contains("C=(0.8"), "method {method}: {out}");
        assert!(out.contains("0.8") && out.contains("1.6"));
    }
}

#[test]
fn fixpoint_on_the_worked_correspondence_reproduces_the_trace() {
    let scene = temp_file("worked.json", WORKED_CORRESPONDENCE);
    let (code, out) = run_cli(&["fixpoint", scene.to_str().unwrap(), "--method", "algorithm1", "--trace"]);
    assert_eq!(code, 0);
    // the scene's own triangles serve as witness, so the labeled steps are
    // the hand-derived ones
    assert!(out.contains("C=(0.8,1.6)"), "{out}");
    for needle in ["D = point (4,0)", "E = point (0,2)", "F = point (4,8)", "G = point (0,0)"] {
        assert!(out.contains(needle), "missing {needle:?} in:\n{out}");
    }
    let json_line = out.lines().last().unwrap();
    let json: serde_json::Value = serde_json::from_str(json_line).unwrap();
    assert_eq!(json["method"], "algorithm1");
    assert!(json["trace"].as_array().unwrap().len() >= 10);
}

#[test]
fn fixpoint_dilation_scene_uses_the_dilation_route() {
    let scene = temp_file("dilation.json", DILATION_SCENE);
    let (code, out) = run_cli(&["fixpoint", scene.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("method=dilation"), "{out}");
    let json: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert!((json["point"][0].as_f64().unwrap() - 2.0).abs() < 1e-9, "{out}");
    assert!((json["point"][1].as_f64().unwrap() - 3.0).abs() < 1e-9, "{out}");
}

#[test]
fn fixpoint_isometry_exits_4() {
    let scene = temp_file("rotation.json", ROTATION_SCENE);
    let (code, _) = run_cli(&["fixpoint", scene.to_str().unwrap(), "--method", "algorithm1"]);
    assert_eq!(code, 4);
}

#[test]
fn figure_writes_svg_with_the_trace_labels() {
    let scene = temp_file("worked.json", WORKED_CORRESPONDENCE);
    let out_path = temp_file("figure.svg", "");
    let (code, _) = run_cli(&[
        "figure",
        scene.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--which",
        "construction",
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&out_path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    for label in ["m", "m'", "n", "n'", "a", "b", "D", "E", "F", "G", "C", "P", "Q", "R", "P'", "Q'", "R'"] {
        assert!(svg.contains(&format!(">{label}</text>")), "missing label {label}");
    }
    assert_eq!(svg.matches("<polygon").count(), 2);
}

#[test]
fn figure_axis_for_an_indirect_scene() {
    let scene = temp_file("beta.json", BETA_SCENE);
    let out_path = temp_file("axis.svg", "");
    let (code, _) = run_cli(&[
        "figure",
        scene.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--which",
        "axis",
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&out_path).unwrap();
    for label in ["P", "P'", "axis", "C"] {
        assert!(svg.contains(&format!(">{label}</text>")), "missing label {label}");
    }
}

#[test]
fn figure_dilation_scene() {
    let scene = temp_file("dilation.json", DILATION_SCENE);
    let out_path = temp_file("dilation.svg", "");
    let (code, _) = run_cli(&[
        "figure",
        scene.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--which",
        "dilation",
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&out_path).unwrap();
    for label in ["A", "A'", "B", "B'", "AA'", "BB'", "C"] {
        assert!(svg.contains(&format!(">{label}</text>")), "missing label {label}");
    }
}

#[test]
fn figure_write_failure_exits_6() {
    let scene = temp_file("alpha.json", ALPHA_SCENE);
    let (code, _) = run_cli(&[
        "figure",
        scene.to_str().unwrap(),
        "--out",
        "/nonexistent-dir/figure.svg",
    ]);
    assert_eq!(code, 6);
}

#[test]
fn fuzz_runs_clean_and_is_deterministic() {
    let out_a = temp_file("report-a.json", "");
    let out_b = temp_file("report-b.json", "");
    let (code_a, stdout_a) = run_cli(&[
        "fuzz", "--seed", "1", "--cases", "300", "--out", out_a.to_str().unwrap(),
    ]);
    let (code_b, _) = run_cli(&[
        "fuzz", "--seed", "1", "--cases", "300", "--out", out_b.to_str().unwrap(),
    ]);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert!(stdout_a.contains("failed=0"));
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "reports with identical seeds must be byte-identical");
    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["equivalence"]["failed"], 0);
    assert_eq!(doc["invariants"]["failed"], 0);
}

#[test]
fn fuzz_accepts_a_config_file_with_flag_overrides() {
    let config = temp_file("config.json", r#"{"cases": 50, "kind_mix": 1.0}"#);
    let out = temp_file("report.json", "");
    let (code, _) = run_cli(&[
        "fuzz", "--config", config.to_str().unwrap(), "--seed", "9", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(doc["config"]["seed"], 9);
    assert_eq!(doc["config"]["cases"], 50);
    assert_eq!(doc["config"]["kind_mix"], 1.0);
}

#[test]
fn fuzz_rejects_invalid_config_with_exit_2() {
    let config = temp_file("bad-config.json", r#"{"scale_range": [0.0, 10.0]}"#);
    let (code, _) = run_cli(&["fuzz", "--config", config.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _) = run_cli(&["fuzz", "--cases", "zebra"]);
    assert_eq!(code, 2);
}

#[test]
fn fuzz_empty_run_exits_0() {
    let out = temp_file("empty-report.json", "");
    let (code, stdout) = run_cli(&["fuzz", "--cases", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("total=0"));
}

#[test]
fn compiled_binary_round_trip() {
    let scene = temp_file("alpha.json", ALPHA_SCENE);
    let output = Command::new(env!("CARGO_BIN_EXE_similitude"))
        .args(["classify", scene.to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with("stretch_rotation center=(0.8,1.6)"));

    let status = Command::new(env!("CARGO_BIN_EXE_similitude"))
        .args(["fixpoint", scene.to_str().unwrap(), "--method", "theorem"])
        .status()
        .expect("binary runs");
    assert!(status.success());
}
