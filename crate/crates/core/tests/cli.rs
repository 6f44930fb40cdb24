use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hzl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzl"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = hzl(args);
    let code = out.status.code().expect("exit code");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\nstderr: {}", String::from_utf8_lossy(&out.stderr))
    });
    (code, json)
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &Value) {
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

const Z_SQUARED: &str = r#"{"num":[[0,0],[0,0],[1,0]],"den":[[1,0]]}"#;

#[test]
fn zeros_examples() {
    let (code, v) = report(&["zeros", "--rhie", "d=2,r=0.5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 5);
    assert_eq!(v["result"]["extremal"], true);
    assert_valid(&v);
    let (code, v) = report(&["zeros", "--rhie", "d=7,r=0.5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 22);
    let (code, v) = report(&["zeros", "--fn", Z_SQUARED]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 4);
    assert_eq!(v["tool"], "hzl");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["function"]["function"], Z_SQUARED);
}

#[test]
fn perturb_over_large_eps() {
    let (code, v) = report(&["perturb", "--fn", "data/smallder.json", "--eps", "0.1", "--at", "0", "--near-radius", "0.5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["theorem"], "local");
    assert_eq!(v["result"]["created_near"], 8);
    assert_valid(&v);
    let (_, v) = report(&["perturb", "--fn", "data/smallder.json", "--eps", "0.05", "--at", "0", "--near-radius", "0.5"]);
    assert_eq!(v["result"]["created_near"], 6);
}

#[test]
fn perturb_negative_residue_creates_nothing() {
    let (code, v) = report(&["perturb", "--rhie", "d=3,r=0.5", "--eps-theta", "3.14159", "--at", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["theorem"], "rotated_residue");
    assert_eq!(v["result"]["created_near"], 0);
    assert_valid(&v);
}

#[test]
fn perturb_convex_rhie_seven() {
    // r = 0.7: at r = 0.5 the convex weight 0.15 gives 21 zeros, not 35
    let (_, v) = report(&["perturb", "--rhie", "d=7,r=0.7", "--convex", "--eps", "0.15", "--at", "0"]);
    let r = &v["result"]["report"];
    assert_eq!(r["after"]["count"], 35);
    assert_eq!(r["extremal"], true);
    assert_eq!(r["after"]["audit"]["matched"], true);
    assert_valid(&v);
}

#[test]
fn perturb_at_reversing_zero_and_failed_minimum() {
    let (code, v) = report(&["perturb", "--rhie", "d=2,r=0.5", "--at", "leftmost-reversing"]);
    assert_eq!(code, 0);
    let r = &v["result"]["report"];
    assert_eq!(r["case"], "reversing_zero");
    assert!(r["created_near"].as_i64().unwrap() >= 4);
    assert_valid(&v);
    // eps too large for the four predicted zeros to stay near z1
    let (code, v) = report(&["perturb", "--fitted", "--seed", "39", "--at", "leftmost-reversing", "--eps", "0.01"]);
    assert_eq!(code, 2);
    assert_eq!(v["ok"], false);
    assert_eq!(v["seed"], 39);
}

#[test]
fn pipeline_replay() {
    let (code, v) = report(&["pipeline", "--config", "data/pipeline_seed.json"]);
    assert_eq!(code, 0);
    let counts: Vec<i64> = v["result"]["counts"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
    assert_eq!(counts, [5, 5, 10, 15]);
    assert_eq!(v["result"]["all_extremal"], true);
    let degrees: Vec<i64> = v["result"]["stages"].as_array().unwrap().iter().map(|s| s["degree"].as_i64().unwrap()).collect();
    assert_eq!(degrees, [2, 2, 3, 4]);
    assert_valid(&v);
    let (code, v) = report(&["pipeline", "--rhie", "d=2,r=0.5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["stages"].as_array().unwrap().len(), 1);
}

#[test]
fn sweep_endpoints() {
    let (code, v) = report(&["sweep", "--rhie", "d=3,r=0.5", "--at", "0", "--thetas", "0,0.1pi,0.2pi,pi"]);
    assert_eq!(code, 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["near_count"], 6);
    assert_eq!(rows[3]["near_count"], 0);
    assert_valid(&v);
}

#[test]
fn portrait_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.png");
    let b = dir.path().join("b.png");
    for p in [&a, &b] {
        let (code, v) = report(&["portrait", "--rhie", "d=3,r=0.5", "--pixels", "96x64", "--output", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["zeros"], 10);
        assert_valid(&v);
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let decoder = png::Decoder::new(std::io::Cursor::new(bytes));
    let reader = decoder.read_info().unwrap();
    assert_eq!((reader.info().width, reader.info().height), (96, 64));
}

#[test]
fn out_directory_and_byte_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = hzl(&["zeros", "--fitted", "--seed", "5", "--out", out.to_str().unwrap(), "--portrait", "--pixels", "32x32"]);
        assert_eq!(o.status.code(), Some(0));
        out
    };
    let (x, y) = (run("x"), run("y"));
    let rx = std::fs::read_to_string(x.join("report.json")).unwrap();
    let ry = std::fs::read_to_string(y.join("report.json")).unwrap();
    // the output directory is echoed in the config; strip it before comparing
    assert_eq!(rx.replace("/x\"", "\""), ry.replace("/y\"", "\""));
    assert_eq!(std::fs::read(x.join("portrait.png")).unwrap(), std::fs::read(y.join("portrait.png")).unwrap());
    let v: Value = serde_json::from_str(&rx).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["result"]["count"], 5);
    assert_valid(&v);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(hzl(&["zeros"]).status.code(), Some(3));
    assert_eq!(hzl(&["zeros", "--rhie", "d=1,r=0.5"]).status.code(), Some(3));
    assert_eq!(hzl(&["zeros", "--fn", "{\"num\": 3}"]).status.code(), Some(3));
    assert_eq!(hzl(&["zeros", "--rhie", "d=2,r=0.5", "--density", "-1"]).status.code(), Some(3));
    assert_eq!(hzl(&["perturb", "--rhie", "d=2,r=0.5", "--at", "middle"]).status.code(), Some(3));
    assert_eq!(hzl(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(hzl(&["--help"]).status.code(), Some(0));
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let (_, a) = report(&["zeros", "--rhie", "d=4,r=0.5"]);
    let (_, b) = report(&["zeros", "--rhie", "d=4,r=0.5", "--sequential"]);
    assert_eq!(a["result"]["census"], b["result"]["census"]);
}
