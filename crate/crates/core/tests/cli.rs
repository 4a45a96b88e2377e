use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use polyval::polygon::{generate_pg2, generate_w2, GeometryFile};
use polyval::valuation::TableValuation;

fn polyval(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polyval")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polyval-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &str) -> Value {
    serde_json::from_str(out).unwrap_or_else(|e| panic!("{e}: {out}"))
}

#[test]
fn check_gp_verdicts() {
    let pg = write_temp("pg22.json", &GeometryFile::from_geometry(&generate_pg2(2).unwrap(), Some(3)).to_json());
    let w2 = write_temp("w2.json", &GeometryFile::from_geometry(&generate_w2(), None).to_json());
    let pg = pg.to_str().unwrap();
    let w2 = w2.to_str().unwrap();
    assert_eq!(polyval(&["check-gp", "--file", pg]).0, 0);
    let (code, out) = polyval(&["check-gp", "--file", pg, "--n", "4"]);
    assert_eq!(code, 1, "{out}");
    assert_eq!(polyval(&["check-gp", "--file", w2, "--n", "4"]).0, 0);
    let (code, out) = polyval(&["--format", "json", "check-gp", "--file", w2, "--n", "3"]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["report"]["violation"]["axiom"].is_string());
    assert_eq!(polyval(&["check-gp", "--file", w2]).0, 2);
}

#[test]
fn malformed_files_report_position() {
    let text = "{\n  \"n\": 3,\n  \"points\": [\"a\", \"b\"],\n  \"lines\": [\"L\"],\n  \"incidence\": [[\"a\", \"L\"], [\"b\"]]\n}\n";
    let path = write_temp("bad.json", text);
    let (code, out) = polyval(&["check-gp", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.contains("incidence[1]") && out.contains("line 5"), "{out}");

    let path = write_temp("truncated.json", "{\"points\": [1, 2");
    let (code, out) = polyval(&["check-valuation", "--file", path.to_str().unwrap(), "--n", "3"]);
    assert_eq!(code, 2);
    assert!(out.contains("line 1"), "{out}");
}

#[test]
fn check_valuation_finds_witnesses() {
    let g = generate_pg2(2).unwrap();
    let mut file = GeometryFile::from_geometry(&g, Some(3));
    file.valuation = Some(TableValuation::trivial().to_entries(&g));
    let good = write_temp("fano-trivial.json", &file.to_json());
    let (code, out) = polyval(&["check-valuation", "--file", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");

    let mut text: Value = serde_json::from_str(&file.to_json()).unwrap();
    text["valuation"]["points"][0][2] = Value::String("1".into());
    let bad = write_temp("fano-bad.json", &text.to_string());
    let (code, out) = polyval(&["--format", "json", "check-valuation", "--file", bad.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    let v = json(&out);
    assert!(!v["report"]["suite"]["u4"]["first_failure"].is_null());

    text["valuation"]["points"][0][2] = Value::String("inf".into());
    let inf = write_temp("fano-inf.json", &text.to_string());
    let (code, out) = polyval(&["--format", "json", "check-valuation", "--file", inf.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(json(&out)["report"]["suite"]["u2"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn weight_commands() {
    let (code, out) = polyval(&["--format", "json", "weights", "--n", "6", "--discrete"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["report"]["exact"][1], "√3/2");
    assert_eq!(v["report"]["discrete"][1]["label"], "WS6-b");
    let (_, out) = polyval(&["classify", "--ws", "1,2,1,1,2,1"]);
    assert!(out.contains("WS4-b"));
    let (_, out) = polyval(&["rescale", "--n", "3"]);
    assert!(out.contains("1,1,1,1 (WS3)"), "{out}");
}

#[test]
fn proof_commands() {
    let (code, out) = polyval(&["--format", "json", "reduce-seq", "--n", "5", "--seq", "0,1,0,1,0,1"]);
    assert_eq!(code, 0, "{out}");
    let v = json(&out);
    assert_eq!(v["report"]["final"], serde_json::json!([0, 1, 2, 3, 2, 1]));
    assert_eq!(v["report"]["slope_invariant"], true);
    let (code, out) = polyval(&["verify-identities", "--n-max", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("case iv"));
}

#[test]
fn sampled_commands() {
    let (code, out) = polyval(&["demo-plane", "--base", "hahn", "--samples", "60", "--seed", "2"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = polyval(&["demo-plane", "--val", "5-adic", "--samples", "60"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = polyval(&["--format", "json", "quasifield-test", "--samples", "100", "--suite-samples", "20"]);
    assert_eq!(code, 0, "{out}");
    assert!(json(&out)["report"]["laws"]["right_distributivity_failure"].is_object());
    let (code, out) = polyval(&["hahn", "eval", "(1 + t)/t^3"]);
    assert_eq!(code, 0);
    assert!(out.contains("valuation: -3"), "{out}");
}
