//! End-to-end tests running the compiled binary against the fixture inputs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_latquad")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .env_remove("LATQUAD_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(binary())
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn path_arg(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn check_reports_the_square_survey() {
    let out = run(&["check", &path_arg("square.json"), "--max-degree", "6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("rank 2 lattice in 4 variables"));
    assert!(text.contains("positive grading (derived): [1, 1, 1, 1]"));
    assert!(text.contains("4 generator segments, 4 syzygy triangles, 1 syzygy quadrangles"));
    assert!(text.contains("a*d - b*c"));
    assert!(text.contains("quadrangle at class (0, 2, 1, 1)"));
}

#[test]
fn degree_routes_agree_on_the_square() {
    let all = run(&["degree", &path_arg("square.json"), "--max-degree", "6"]);
    assert_eq!(code(&all), 0);
    let text = stdout(&all);
    assert!(text.contains("degree 2 (closed formula) = 2 (resolution numerator)"));
    assert!(text.contains("ideal degree by fiber counting: 2"));
    assert!(text.contains("all three routes agree"));

    for method in ["oracle", "resolution", "formula"] {
        let out = run(&[
            "degree",
            &path_arg("square.json"),
            "--max-degree",
            "6",
            "--method",
            method,
        ]);
        assert_eq!(code(&out), 0, "method {method}");
        assert!(stdout(&out).contains('2'), "method {method}");
    }

    let oracle = run(&[
        "degree",
        &path_arg("square.json"),
        "--max-degree",
        "6",
        "--method",
        "oracle",
    ]);
    assert!(stdout(&oracle).contains(r#""1", "4", "6", "8", "10", "12", "14""#));
}

#[test]
fn bound_holds_on_the_square_with_gap_two() {
    let out = run(&["bound", &path_arg("square.json"), "--max-degree", "6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("M1 = 2"));
    assert!(text.contains("M2 = 3"));
    assert!(text.contains("bound 2 deg <= M1*M2 holds (gap 2)"));
    assert!(text.contains("generate the whole ideal"));
}

#[test]
fn bound_single_quadrangle_fixture_certifies_the_whole_ideal() {
    let out = run(&["bound", &path_arg("single_quadrangle.json")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ideal degree by fiber counting: 6"));
    assert!(text.contains("M1 = 6"));
    assert!(text.contains("M2 = 7"));
    assert!(text.contains("generate the whole ideal"));
}

#[test]
fn degree_multi_quadrangle_fixture_reports_upper_bounds() {
    let out = run(&[
        "degree",
        &path_arg("multi_quadrangle.json"),
        "--method",
        "formula",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches("quadrangle at class").count(), 3);
    assert!(text.contains("upper bound for the ideal degree"));
}

#[test]
fn negative_control_detects_doubled_counts() {
    let out = run(&[
        "bound",
        &path_arg("square.json"),
        "--max-degree",
        "6",
        "--negative-control",
    ]);
    assert_eq!(code(&out), 2);
    let text = stdout(&out);
    assert!(text.contains("2 deg = 8 vs M1*M2 = 6"));
    assert!(text.contains("VIOLATED as expected"));
}

#[test]
fn negative_control_needs_the_standard_grading() {
    let out = run(&[
        "bound",
        &path_arg("square_doubled_grading.json"),
        "--negative-control",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn nonstandard_grading_skips_the_counting_route() {
    let out = run(&["bound", &path_arg("square_doubled_grading.json")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ideal degree by fiber counting: unavailable"));
    assert!(text.contains("per-quadrangle bounds hold"));
}

#[test]
fn complete_intersection_has_no_quadrangle() {
    let out = run(&["bound", &path_arg("complete_intersection.json")]);
    assert_eq!(code(&out), 6);
}

#[test]
fn hypothesis_failures_exit_three() {
    let no_grading = run(&["check", &path_arg("no_positive_grading.json")]);
    assert_eq!(code(&no_grading), 3);
    let rank = run(&["check", &path_arg("rank_deficient.json")]);
    assert_eq!(code(&rank), 3);
}

#[test]
fn bad_inputs_exit_one() {
    let malformed = run(&["check", &path_arg("malformed.json")]);
    assert_eq!(code(&malformed), 1);
    let unknown = run(&["check", &path_arg("unknown_field.json")]);
    assert_eq!(code(&unknown), 1);
    let missing = run(&["check", "/nonexistent/input.json"]);
    assert_eq!(code(&missing), 1);
    let usage = run(&["explore"]);
    assert_eq!(code(&usage), 1);
    let big_grid = run(&["explore", "--grid", "9"]);
    assert_eq!(code(&big_grid), 1);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn max_degree_precedence_flag_over_file_over_env() {
    // The file pins max_degree 1, too shallow to see any quadrangle.
    let from_file = run(&["bound", &path_arg("square_shallow.json")]);
    assert_eq!(code(&from_file), 6);

    // The flag overrides the file.
    let from_flag = run(&[
        "bound",
        &path_arg("square_shallow.json"),
        "--max-degree",
        "8",
    ]);
    assert_eq!(code(&from_flag), 0);

    // The environment fills in when both are absent.
    let from_env = run_with_env(
        &["degree", &path_arg("square.json"), "--method", "oracle"],
        "LATQUAD_MAX_DEGREE",
        "6",
    );
    assert_eq!(code(&from_env), 0);
    assert!(stdout(&from_env).contains("through weighted degree 6"));

    // But the file still beats the environment.
    let file_beats_env = run_with_env(
        &["bound", &path_arg("square_shallow.json")],
        "LATQUAD_MAX_DEGREE",
        "8",
    );
    assert_eq!(code(&file_beats_env), 6);

    let bad_env = run_with_env(
        &["degree", &path_arg("square.json"), "--method", "oracle"],
        "LATQUAD_MAX_DEGREE",
        "many",
    );
    assert_eq!(code(&bad_env), 1);
}

#[test]
fn json_output_is_deterministic_and_matches_text() {
    let a = run(&[
        "bound",
        &path_arg("square.json"),
        "--max-degree",
        "6",
        "--format",
        "json",
    ]);
    let b = run(&[
        "bound",
        &path_arg("square.json"),
        "--max-degree",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout, "same input, byte-identical JSON");

    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).expect("valid JSON");
    let report = &parsed["report"];
    assert_eq!(report["ideal_degree"], serde_json::json!(2));
    assert_eq!(report["m1"], serde_json::json!(2));
    assert_eq!(report["m2"], serde_json::json!(3));
    assert_eq!(report["gap"], serde_json::json!(2));
    assert_eq!(report["holds"], serde_json::json!(true));
    assert_eq!(
        report["generators_from_single_quadrangle"],
        serde_json::json!(true)
    );
    assert_eq!(report["quadrangles"].as_array().map(Vec::len), Some(1));

    let text = run(&["bound", &path_arg("square.json"), "--max-degree", "6"]);
    assert!(
        stdout(&text).contains("gap 2"),
        "text output reports the same gap"
    );
}

#[test]
fn explore_family_matches_the_predicted_gap() {
    let out = run(&["explore", "--family", "1", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(parsed["profiles"], serde_json::json!(1));
    assert_eq!(parsed["min_gap"], serde_json::json!(6));
    assert_eq!(parsed["zero_gaps"], serde_json::json!(0));
}

#[test]
fn explore_grid_finds_no_zero_gaps() {
    let out = run(&["explore", "--grid", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(parsed["min_gap"], serde_json::json!(2));
    assert_eq!(parsed["zero_gaps"], serde_json::json!(0));
    assert_eq!(parsed["violations"], serde_json::json!(0));
}

#[test]
fn explore_csv_has_one_row_per_profile() {
    let out = run(&["explore", "--random", "5", "42", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(
        lines[0],
        "u_plus,u_minus,v_plus,v_minus,p,r,s,t,degree,m1,m2,gap,holds"
    );
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), 13);
        assert!(row.ends_with(",true"));
    }

    let again = run(&["explore", "--random", "5", "42", "--format", "csv"]);
    assert_eq!(out.stdout, again.stdout, "seeded run is reproducible");
}
