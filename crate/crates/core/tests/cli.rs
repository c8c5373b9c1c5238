//! End-to-end checks of the command-line interface: output stability,
//! exit-code contract, and the documented JSON schemas.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsionpair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn crosscheck_all_passes_and_is_deterministic() {
    let a = run(&["crosscheck-all", "--d-max", "8"]);
    assert!(a.status.success());
    let b = run(&["crosscheck-all", "--d-max", "8"]);
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    assert!(stdout(&a).contains("crosscheck-all: PASS"));
}

#[test]
fn seed_is_echoed_verbatim() {
    let out = run(&["--seed", "424242", "crosscheck-all", "--d-max", "2"]);
    assert!(stdout(&out).starts_with("seed: 424242"));
    let out = run(&["--format", "json", "--seed", "7", "kk-table", "--max", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn pairing_ext_on_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ext.json");
    // multiplication by 3 on Z, quotient onto Z/3
    std::fs::write(
        &path,
        r#"{
            "E": {"free_rank": 1, "torsion": []},
            "iota": {"source": {"free_rank": 1, "torsion": []},
                     "target": {"free_rank": 1, "torsion": []},
                     "matrix": [[3]]},
            "pi": {"source": {"free_rank": 1, "torsion": []},
                   "target": {"free_rank": 0, "torsion": [3]},
                   "matrix": [[1]]}
        }"#,
    )
    .unwrap();
    let out = run(&["pairing-ext", "--extension", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("|-> 1/3"), "got: {}", stdout(&out));
}

#[test]
fn parse_errors_exit_two_and_cite_the_path() {
    let out = run(&["group", "--generators", "2", "--relations", "[[1, \"x\"]]"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("relations[0][1]"), "stderr: {err}");

    let out = run(&["pairing-ext", "--extension", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mathematical_failures_exit_one() {
    // alpha that does not kill the divisible summand is a math failure
    let input = r#"{
        "k0": {"free_rank": 1, "torsion": []},
        "k1": {"free_rank": 0, "torsion": [4]},
        "degree": 0,
        "alpha_divisible": [1],
        "alpha_torsion": ["1/4"]
    }"#;
    let out = run(&["pairing-qz", "--input", input]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lambda_roundtrip_reports() {
    let out = run(&[
        "lambda-roundtrip",
        "--k1",
        r#"{"free_rank": 0, "torsion": [6]}"#,
        "--delta",
        r#"["5/6"]"#,
        "--bound",
        "12",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("compatibility: PASS"));
    assert!(text.contains("round trip: PASS"));

    // a lossy bound warns and skips the round trip
    let out = run(&[
        "lambda-roundtrip",
        "--k1",
        r#"{"free_rank": 0, "torsion": [6]}"#,
        "--delta",
        r#"["1/6"]"#,
        "--bound",
        "8",
    ]);
    assert!(stdout(&out).contains("warning"));
}

#[test]
fn detpair_inline_matrices() {
    // third root of unity against the identity
    let c = 0.5f64;
    let s = (3.0f64).sqrt() / 2.0;
    let pi = format!("[[[{}, {}]]]", -c, s);
    let out = run(&[
        "detpair",
        "--pi",
        &pi,
        "--sigma",
        "[[[1.0, 0.0]]]",
        "--cap",
        "3",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("1/3"));
}

#[test]
fn snf_json_output_recomposes() {
    let out = run(&["--format", "json", "snf", "--matrix", "[[2,4],[6,8]]"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["d"], serde_json::json!([[2, 0], [0, 4]]));
}

#[test]
fn kk_table_matches_expected_row() {
    let out = run(&["kk-table", "--max", "6", "--degree", "0"]);
    let text = stdout(&out);
    // the coefficient-1 row lists Z, Z/2, ..., Z/6
    let row: Vec<&str> = text
        .lines()
        .find(|l| l.trim_start().starts_with("n=1"))
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(row[1..], ["Z", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6"]);
}
