use std::path::PathBuf;
use std::process::{Command, Output};

use perpcat::io;
use perpcat::quiverrep::corpus::{a2, kronecker};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perpcat")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn scratch(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn dims(v: &Value) -> Vec<u64> {
    v["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect()
}

#[test]
fn hom_and_ext_dimensions() {
    assert_eq!(json(&["hom", "@A2", "@P1", "@P1"])["dimension"], 1);
    assert_eq!(json(&["ext", "@A2", "@S1", "@S2"])["dimension"], 1);
    assert_eq!(json(&["ext", "@A2", "@S2", "@S1", "--field", "fp:5"])["dimension"], 0);
}

#[test]
fn mismatched_quivers_exit_2() {
    let kr = scratch("kr_module.json", r#"{"field": {"kind": "Q"}, "dims": [1, 1], "matrices": {"a": [["1"]], "b": [["0"]]}}"#);
    let out = run(&["hom", "@A3", &kr, "@S1"]);
    assert_eq!(out.status.code(), Some(2));
    let embedded = scratch(
        "embedded.json",
        r#"{"quiver": {"vertices": 2, "arrows": [{"id": "a", "source": 1, "target": 2}, {"id": "b", "source": 1, "target": 2}]},
            "field": {"kind": "Q"}, "dims": [1, 1], "matrices": {"a": [["1"]]}}"#,
    );
    let out = run(&["hom", "@A2", &embedded, "@S1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("different quiver"));
}

#[test]
fn five_term_examples_round_trip() {
    let q = a2();
    let v = json(&["five-term", "@A2", "@S2", "@P1"]);
    let terms = &v["terms"];
    let got: Vec<_> = ["Y_M", "X_M", "Yup", "Xup"].iter().map(|t| dims(&terms[*t])).collect();
    assert_eq!(got, [vec![0, 0], vec![0, 1], vec![1, 0], vec![0, 0]]);
    assert_eq!(v["routesAgree"], true);
    for t in ["Y_M", "X_M", "Yup", "Xup"] {
        let m = io::rep_from_json(&q, &terms[t]).unwrap();
        assert_eq!(io::rep_to_json(&m), terms[t]);
    }
    let m = io::rep_from_json(&q, &v["M"]).unwrap();
    let x_lower = io::rep_from_json(&q, &terms["X_M"]).unwrap();
    let c = io::morphism_from_json(&x_lower, &m, &v["maps"][1]).unwrap();
    assert!(c.commutes() && c.is_injective());

    let v = json(&["five-term", "@A2", "@S1", "@S2"]);
    let got: Vec<_> = ["Y_M", "X_M", "Yup", "Xup"].iter().map(|t| dims(&v["terms"][*t])).collect();
    assert_eq!(got, [vec![0, 0], vec![0, 0], vec![1, 1], vec![1, 0]]);
}

#[test]
fn non_exceptional_generator_exit_3() {
    let regular = scratch("regular.json", r#"{"field": {"kind": "Q"}, "dims": [1, 1], "matrices": {"a": [["1"]], "b": [["1"]]}}"#);
    let out = run(&["five-term", "@Kronecker", &regular, "@S1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dim Ext^1(X, X) = 1"));
}

#[test]
fn perp_algebra_dimensions() {
    assert_eq!(json(&["perp", "@A2", "@S1"])["dimB"], 4);
    assert_eq!(json(&["perp", "@A2", "@S2"])["dimB"], 1);
    let v = json(&["perp", "@A2", "@P1"]);
    assert_eq!(v["dimB"], 1);
    assert_eq!(v["checks"]["homologicalEpi"]["passed"], true);
    assert_eq!(v["checks"]["sigmaInverted"], true);
}

#[test]
fn sigma_agrees_with_membership() {
    let v = json(&["sigma", "@A3", "@S2"]);
    for row in v["probes"].as_array().unwrap() {
        assert_eq!(row["agrees"], true);
    }
}

#[test]
fn verify_suites_pass() {
    let v = json(&["verify", "@A2", "@S2"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["invariants"].as_array().unwrap().len(), 9);
    let v = json(&["verify", "@Kronecker", "@S2", "--probes", "@preprojectives:2"]);
    assert_eq!(v["passed"], true);
    let dims: Vec<_> = v["probes"].as_array().unwrap().iter().cloned().collect();
    assert_eq!(dims.last().unwrap(), &serde_json::json!([2, 3]));
}

#[test]
fn verify_reads_probe_files() {
    let q = kronecker();
    let probes: Vec<Value> = (0..3)
        .map(|n| io::rep_to_json(&perpcat::quiverrep::corpus::kronecker_preinjective(perpcat::exactlin::Field::Rationals, n).unwrap()))
        .collect();
    let file = scratch("probes.json", &Value::Array(probes).to_string());
    assert_eq!(json(&["verify", "@Kronecker", "@P1", "--probes", &file])["passed"], true);
    let _ = q;

    let corrupted = scratch("corrupted.json", r#"[{"field": {"kind": "Q"}, "dims": [1, 1], "matrices": {"a": [["1"]], "b": [[1, 2]]}}]"#);
    let out = run(&["verify", "@Kronecker", "@P1", "--probes", &corrupted]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("probes[0].matrices.b[0]"));
    let truncated = scratch("truncated.json", "[{\"field\": ");
    assert_eq!(run(&["verify", "@A2", "@S2", "--probes", &truncated]).status.code(), Some(2));
}

#[test]
fn telescope_passes() {
    let v = json(&["telescope", "@A3", "@P1"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["generatorInKernel"], true);
    assert_eq!(v["complexes"].as_array().unwrap().len(), 18);
}

#[test]
fn valuation_models() {
    let v = json(&["valuation"]);
    assert_eq!(v["satisfied"], true);
    assert_eq!(v["report"]["leastPositive"]["exists"], false);
    let v = json(&["valuation", "--model", "z1"]);
    assert_eq!(v["satisfied"], false);
    assert_eq!(v["report"]["leastPositive"]["exists"], true);

    let file = scratch("values.json", r#"[{"1": 1}, {"2": 3, "4": -1}]"#);
    let v = json(&["valuation", "--probes", &file]);
    let witnesses = v["report"]["idempotence"]["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 2);
    assert!(witnesses.iter().all(|w| w[1]["kind"] == "sum"));
    assert_eq!(run(&["valuation", "--model", "z0"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_honours_out() {
    let a = run(&["verify", "@A3", "@S2", "--format", "json"]);
    let b = run(&["verify", "@A3", "@S2", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("perp.txt");
    let out = run(&["perp", "@A2", "@S1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("dim B = 4"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["hom", "@A9", "@S1", "@S1"]).status.code(), Some(2));
    assert_eq!(run(&["hom", "@A2", "@S7", "@S1"]).status.code(), Some(2));
    assert_eq!(run(&["hom", "@A2", "@S1", "@S1", "--field", "fp:6"]).status.code(), Some(2));
    assert_eq!(run(&["hom", "@A2", "missing.json", "@S1"]).status.code(), Some(2));
}
