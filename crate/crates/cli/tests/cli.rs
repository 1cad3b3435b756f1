use std::path::PathBuf;
use std::process::Command;

use nilhecke_cli::{run, Outcome, EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn root(rel: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.pop();
    p.pop();
    p.push(rel);
    p.to_string_lossy().into_owned()
}

fn nilhecke(args: &[&str]) -> Outcome {
    run(std::iter::once("nilhecke").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(o.stdout.as_deref().expect("stdout")).expect("valid json")
}

#[test]
fn f4_dimension_on_both_backends() {
    let f4 = root("systems/f4_k4.json");
    let o = nilhecke(&["dim", "--system", &f4, "--crosscheck"]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["dimension"], 304);
    assert_eq!(v["words"], 304);
    assert_eq!(v["group"], 304);
    assert_eq!(v["agree"], true);
}

#[test]
fn g29_module_is_a_witness() {
    let o = nilhecke(&[
        "verify-module",
        "--system",
        &root("systems/g29_k3.json"),
        "--module",
        &root("figures/g29.json"),
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["relations_ok"], true);
    assert_eq!(v["is_witness"], true);
}

#[test]
fn f5_figure_fails_verification() {
    let o = nilhecke(&[
        "verify-module",
        "--system",
        &root("systems/f5_k4.json"),
        "--module",
        &root("figures/f5.json"),
    ]);
    assert_eq!(o.code, EXIT_NEGATIVE);
    let v = json(&o);
    assert_eq!(v["is_witness"], false);
    assert!(v["failures"].as_array().is_some_and(|f| !f.is_empty()));
}

#[test]
fn braid_word_times_generator_is_zero_at_infinity() {
    let a2 = root("systems/a2_inf.json");
    let o = nilhecke(&["multiply", "--system", &a2, "--left", "1 2 1", "--right", "1"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(json(&o)["result"], "zero");
    let o = nilhecke(&["multiply", "--system", &a2, "--left", "1 2", "--right", "1"]);
    assert_eq!(json(&o)["result"], "1 2 1");
}

#[test]
fn missing_file_is_a_usage_error() {
    let o = nilhecke(&["dim", "--system", "/nonexistent/system.json"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stdout.is_none());
    assert!(!o.stderr.is_empty());
}

#[test]
fn small_budget_reports_partial_status() {
    let o = nilhecke(&[
        "--budget-max-word-length",
        "5",
        "dim",
        "--system",
        &root("systems/a2_inf.json"),
        "--backend",
        "words",
    ]);
    assert_eq!(o.code, EXIT_OK, "A2 at k = infinity has top degree 3");
    let o =
        nilhecke(&["--budget-max-word-length", "5", "dim", "--system", &root("systems/affine_a2_k3.json")]);
    assert_eq!(o.code, EXIT_BUDGET);
    let v = json(&o);
    assert_eq!(v["status"], "budget_exceeded");
    assert_eq!(v["level_sizes"].as_array().map(Vec::len), Some(6));
}

#[test]
fn unknown_subcommand_exits_with_usage() {
    assert_eq!(nilhecke(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(nilhecke(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_output_is_deterministic() {
    let a2 = root("systems/a2_inf.json");
    let out = || {
        Command::new(env!("CARGO_BIN_EXE_nilhecke"))
            .args(["primitives", "--system", &a2])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (out(), out());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["two_sided_dim"], 1);
    assert_eq!(v["primitive_monomials"][0], "1 2 1");
}
