//! The JSON files under `figures/` and `systems/` match the in-code constructors.
//! Set `NILHECKE_WRITE_DATA=1` to regenerate them.

use std::path::{Path, PathBuf};

use nilhecke_core::coxsys::{standard_system, Cutoff, NilHeckeParams, StandardFamily};
use nilhecke_core::diagmod::{bundled_figures, verify, BundledFigure, FigureSystem};
use nilhecke_core::sysfile::{load_diagram, load_system, system_to_json, SystemSpec};
use serde_json::{json, Value};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stem(id: &str) -> String {
    let base = id.trim_end_matches("module").to_lowercase();
    base.replace("(m=", "_m").replace(')', "")
}

fn cutoff(k: Cutoff) -> String {
    match k {
        Cutoff::Finite(k) => k.to_string(),
        Cutoff::Infinite => "inf".into(),
    }
}

fn system_file(fig: &BundledFigure) -> String {
    let k = match &fig.system {
        FigureSystem::Coxeter(p) => p.effective_cutoff().expect("cutoff"),
        FigureSystem::G29 { k, .. } => *k,
    };
    format!("{}_k{}.json", stem(&fig.id), cutoff(k))
}

fn standard(family: StandardFamily, k: Cutoff) -> SystemSpec {
    SystemSpec::Coxeter(NilHeckeParams::nil_coxeter(standard_system(family).unwrap(), k))
}

/// Extra systems used in examples and by the CLI tests.
fn extra_systems() -> Vec<(&'static str, Value)> {
    let std_file = |family: &str, rank: usize, k: Value| json!({"coxeter": {"standard": {"family": family, "rank": rank}}, "truncation": {"k": k}});
    vec![
        ("f4_k4.json", std_file("F", 4, json!(4))),
        ("h3_k4.json", std_file("H", 3, json!(4))),
        ("h4_k4.json", std_file("H", 4, json!(4))),
        ("b3_k4.json", std_file("B", 3, json!(4))),
        ("a2_inf.json", std_file("A", 2, json!("infinity"))),
        (
            "a3_d3_k3.json",
            json!({"coxeter": {"standard": {"family": "A", "rank": 3}}, "d": [3, 2, 2], "truncation": {"k": 3}}),
        ),
        ("i2_6_k2.json", json!({"coxeter": {"standard": {"family": "I2", "m": 6}}, "truncation": {"k": 2}})),
        (
            "affine_a2_k3.json",
            json!({"coxeter": {"matrix": [[1, 3, 3], [3, 1, 3], [3, 3, 1]]}, "truncation": {"k": 3}}),
        ),
    ]
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn check_or_write(path: &Path, expected: &str) {
    if std::env::var_os("NILHECKE_WRITE_DATA").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, expected).unwrap();
    } else {
        let actual = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(actual, expected, "{} is stale", path.display());
    }
}

#[test]
fn shipped_files_match_constructors() {
    let root = root();
    let mut manifest = Vec::new();
    for fig in bundled_figures() {
        let diagram_name = format!("{}.json", stem(&fig.id));
        let sys_name = system_file(&fig);
        let sys = SystemSpec::from(fig.system.clone());
        check_or_write(
            &root.join("figures").join(&diagram_name),
            &pretty(&serde_json::to_value(&fig.diagram).unwrap()),
        );
        check_or_write(&root.join("systems").join(&sys_name), &pretty(&system_to_json(&sys)));
        manifest
            .push(json!({"id": fig.id, "diagram": diagram_name, "system": format!("../systems/{sys_name}")}));
    }
    check_or_write(&root.join("figures/manifest.json"), &pretty(&Value::Array(manifest)));
    for (name, v) in extra_systems() {
        check_or_write(&root.join("systems").join(name), &pretty(&v));
    }
}

#[test]
fn shipped_files_load_back() {
    let root = root();
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(root.join("figures/manifest.json")).unwrap()).unwrap();
    let figures = bundled_figures();
    for entry in manifest.as_array().unwrap() {
        let id = entry["id"].as_str().unwrap();
        let fig = figures.iter().find(|f| f.id == id).unwrap();
        let d = load_diagram(&root.join("figures").join(entry["diagram"].as_str().unwrap())).unwrap();
        let s = load_system(&root.join("figures").join(entry["system"].as_str().unwrap())).unwrap();
        assert_eq!(d, fig.diagram);
        assert_eq!(s, SystemSpec::from(fig.system.clone()));
        let r = verify(&d, &s.presentation()).unwrap();
        assert_eq!(r.is_witness, !matches!(id, "F5module" | "H5module"), "{id}");
    }
    assert_eq!(
        load_system(&root.join("systems/f4_k4.json")).unwrap(),
        standard(StandardFamily::F(4), Cutoff::Finite(4))
    );
    for (name, _) in extra_systems() {
        load_system(&root.join("systems").join(name)).unwrap();
    }
}
