use std::path::PathBuf;
use std::process::{Command, Output};

use hkgeom::lie::build_psi;
use hkgeom::ternary::{build_upsilon, Variant};
use serde_json::Value;

fn hkgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hkgeom")).args(args).env_remove("HKGEOM_SEED").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn einstein_member_of_family27() {
    let out = hkgeom(&["family", "--name", "family27", "--params", "k=1,t=5/3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["einstein_characteristic"], true);
    assert_eq!(v["ric_scalar"], "136/3");
    assert_eq!(v["torsion_class"], json(&hkgeom(&["family", "--name", "family27", "--params", "k=1,t=1"]))["torsion_class"]);
    assert_eq!(v["parameters"]["t"], "5/3");
}

#[test]
fn levi_civita_einstein_member() {
    let v = json(&hkgeom(&["family", "--name", "family27", "--params", "k=1,t=10/13"]));
    assert_eq!(v["einstein_levi_civita"], true);
    assert_eq!(v["ric_lc_scalar"], "16128/169");
    assert_eq!(v["einstein_characteristic"], false);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "ternary", "--k", "3"][..],
        &["family", "--name", "nope"],
        &["family", "--name", "family27", "--params", "k=1"],
        &["family", "--name", "family27", "--params", "k=1,t=abc"],
        &["suite", "99"],
        &["stabilizer", "--target", "nothing"],
    ] {
        let out = hkgeom(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn ternary_from_file_matches_builtin() {
    let path = tmp("upsilon_k2.json");
    std::fs::write(&path, serde_json::to_string(&build_upsilon(2, Variant::One).unwrap()).unwrap()).unwrap();
    let from_file = hkgeom(&["verify", "ternary", "--k", "2", "--input", path.to_str().unwrap()]);
    let builtin = hkgeom(&["verify", "ternary", "--k", "2"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, builtin.stdout);
}

#[test]
fn psi_is_the_invariant_type() {
    let path = tmp("psi.json");
    std::fs::write(&path, serde_json::to_string(&build_psi().form).unwrap()).unwrap();
    let out = hkgeom(&["classify-3form", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["class"], "sym2_1");
}

#[test]
fn output_file_and_seed_from_environment() {
    let path = tmp("tensor_square.json");
    let out = Command::new(env!("CARGO_BIN_EXE_hkgeom"))
        .args(["decompose", "tensor-square", "--k", "1", "--output", path.to_str().unwrap()])
        .env("HKGEOM_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, hkgeom(&["decompose", "tensor-square", "--k", "1", "--seed", "9"]).stdout);
    assert!(String::from_utf8(out.stderr).unwrap().contains("wall time"));
}

#[test]
fn slow_lambda3_is_skipped_by_default() {
    let out = hkgeom(&["decompose", "lambda3", "--k", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["skipped"].is_string());
}

#[test]
fn single_criterion_suite() {
    let out = hkgeom(&["suite", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn tensor_square_spectrum_for_k1() {
    let v = json(&hkgeom(&["decompose", "tensor-square", "--k", "1"]));
    let got: Vec<(String, u64)> = v["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["eigenvalue"].as_str().unwrap().to_string(), e["dim"].as_u64().unwrap()))
        .collect();
    let want = [("14", 1), ("7", 3), ("4", 9), ("-3", 5), ("-8", 7)].map(|(l, d)| (l.to_string(), d));
    assert_eq!(got, want);
}

#[test]
fn zero_tensor_fails_the_quadratic_identity() {
    let path = tmp("zero_rank3.json");
    std::fs::write(&path, r#"{"n":8,"rank":3,"entries":[]}"#).unwrap();
    let out = hkgeom(&["verify", "ternary", "--k", "2", "--variant", "1", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["properties"]["quadratic_identity"], false);
}

#[test]
fn metric_serializes_in_index_order() {
    let g = serde_json::to_string(&hkgeom::SymTensor::metric(5)).unwrap();
    let entries: String = (1..=5).map(|i| format!(r#"{{"idx":[{i},{i}],"c":"1"}}"#)).collect::<Vec<_>>().join(",");
    assert_eq!(g, format!(r#"{{"n":5,"rank":2,"entries":[{entries}]}}"#));
}
