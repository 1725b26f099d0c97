use std::io::Write;
use std::process::{Command, Stdio};

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;

use tstab::sample::{random_objects, rng, SampleBounds};
use tstab_cli::{run, FiltrationDoc, Outcome};

fn tstab(args: &[&str]) -> Outcome {
    tstab_stdin(args, "")
}

fn tstab_stdin(args: &[&str], stdin: &str) -> Outcome {
    let argv: Vec<String> = std::iter::once("tstab").chain(args.iter().copied()).map(String::from).collect();
    run(&argv, &mut stdin.as_bytes())
}

fn json(args: &[&str]) -> Value {
    let mut argv = args.to_vec();
    argv.extend(["--format", "json"]);
    let out = tstab(&argv);
    serde_json::from_str(&out.output).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.output))
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().expect("an object").keys().map(String::as_str).collect()
}

#[test]
fn hn_of_o3_under_exceptional_pair() {
    let v = json(&["hn", "O(3)", "--stability", "exc", "--k", "0", "--p", "0"]);
    assert_eq!(keys(&v), ["family", "object", "quotients", "terms"]);
    let doc: FiltrationDoc = serde_json::from_value(v).unwrap();
    let quotients: Vec<(String, String)> = doc.quotients.iter().map(|q| (q.slope.to_string(), q.object.clone())).collect();
    assert_eq!(quotients, [("(1,0)".to_string(), "2*O(0)[1]".to_string()), ("(0,1)".to_string(), "3*O(1)[0]".to_string())]);
    assert_eq!(doc.terms, ["O(3)[0]", "3*O(1)[0]", "0"]);
}

#[test]
fn catalog_record_for_e1() {
    let v = json(&["catalog", "E", "--params", "p=1"]);
    let expected: Value = serde_json::from_str(
        r#"{"name":"E","params":{"p":1},"twist":0,"shift":0,"heart":["O[1]","O(1)[-2]"],"bounded":true}"#,
    )
    .unwrap();
    assert_eq!(v, expected);
}

#[test]
fn catalog_lists_every_entry() {
    let v = json(&["catalog"]);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["A", "B", "C", "D", "E", "F", "G", "H", "I"]);
    for r in v.as_array().unwrap() {
        assert_eq!(keys(r), ["bounded", "heart", "name", "params", "shift", "twist"]);
    }
    let text = tstab(&["catalog", "F", "--params", "p=0", "--diagram"]).output;
    assert!(text.contains("Kronecker"), "{text}");
    assert!(text.contains("legend"), "{text}");
}

#[test]
fn exceptional_stability_check_passes() {
    let out = tstab(&["check", "stability", "--stability", "exc", "--k", "0", "--p", "inf", "--window", "6"]);
    assert_eq!(out.code, 0, "{}", out.output);
    assert!(out.output.contains("pass"));
    let v = json(&["check", "stability", "--stability", "std", "--window", "3", "--seed", "7"]);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["samples"], 100);
}

#[test]
fn hn_output_always_passes_check_hn() {
    let bounds = SampleBounds::default();
    let families: [&[&str]; 5] = [
        &["--stability", "std"],
        &["--stability", "coarse"],
        &["--stability", "exc", "--k", "-1", "--p", "2"],
        &["--stability", "exc", "--k", "1", "--p", "inf"],
        &["--stability", "std", "--points", "z,y,x"],
    ];
    for x in random_objects(11, 40, &bounds) {
        for family in families {
            let expr = x.to_string();
            let mut args = vec!["hn", expr.as_str(), "--format", "json"];
            args.extend_from_slice(family);
            let doc = tstab(&args);
            assert_eq!(doc.code, 0, "{}", doc.output);
            let checked = tstab_stdin(&["check", "hn", "--window", "3"], &doc.output);
            assert_eq!(checked.code, 0, "{x} {family:?}\n{}", checked.output);
        }
    }
}

#[test]
fn check_hn_rejects_a_tampered_document() {
    let doc = tstab(&["hn", "O(0) + O(2)", "--format", "json"]).output;
    let mut v: Value = serde_json::from_str(&doc).unwrap();
    v["quotients"].as_array_mut().unwrap().reverse();
    let out = tstab_stdin(&["check", "hn", "--format", "json"], &v.to_string());
    assert_eq!(out.code, 1);
    let report: Value = serde_json::from_str(&out.output).unwrap();
    assert_eq!(report["passed"], Value::Bool(false));
    let bad = tstab_stdin(&["check", "hn"], "{not json");
    assert_eq!(bad.code, 1);
}

#[test]
fn exit_codes_and_json_errors() {
    let out = tstab(&["normalize", "T(x,0)", "--format", "json"]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.output).unwrap();
    assert!(v["error"].as_str().unwrap().contains("position 4"));
    assert_eq!(tstab(&["normalize", "O(1"]).code, 1);
    assert_eq!(tstab(&["truncate", "O(1)", "--cut", "exc:a=0,b=0"]).code, 1);
    assert_eq!(tstab(&["frobnicate"]).code, 2);
    let usage = tstab(&["hn", "--format", "json"]);
    assert_eq!(usage.code, 2);
    assert!(serde_json::from_str::<Value>(&usage.output).unwrap()["error"].is_string());
    assert_eq!(tstab(&["hn", "O(1)", "--stability", "exc", "--p", "-3"]).code, 2);
    assert_eq!(tstab(&["--help"]).code, 0);
}

#[test]
fn normalize_and_hom() {
    assert_eq!(tstab(&["normalize", "O(1)[0] + O(1)"]).output, "2*O(1)[0]\n");
    let v = json(&["hom", "O(0)", "O(0)[1]"]);
    assert_eq!(v["profile"], serde_json::json!({"-1": 1}));
    assert_eq!(json(&["hom", "O(0)", "O(3)", "--degree", "0"])["dim"], 4);
    assert_eq!(json(&["hom", "O(3)", "O(0)", "--degree", "1"])["dim"], 2);
    assert_eq!(json(&["hom", "S(1,3,a)", "S(2,1,b)", "--degree", "1"])["dim"], 5);
    assert_eq!(tstab(&["hom", "O(1)", "S(1,0,a)"]).code, 1);
    let v = json(&["normalize", "S(2,1,a)[1] + 0"]);
    assert_eq!(v["category"], "elliptic");
    assert_eq!(v["k0"], serde_json::json!({"rank": -2, "degree": -1}));
}

#[test]
fn truncate_heart_and_classify() {
    let v = json(&["truncate", "O(2) + O(-3) + T(x,1)", "--cut", "std:m=0,K=0,P=all"]);
    assert_eq!(v["le0"], "O(2)[0] + T(x,1)[0]");
    assert_eq!(v["ge1"], "O(-3)[0]");
    assert_eq!(json(&["heart", "--cut", "std:m=0,K=0,P=all", "--contains", "O(-3)[1] + O(5)"])["contains"], Value::Bool(true));
    assert_eq!(json(&["heart", "--cut", "exc:a=1,b=-2", "--p", "1"])["heart"], serde_json::json!(["O[1]", "O(1)[-2]"]));
    let v = json(&["classify", "--cut", "exc:a=4,b=1", "--k", "2", "--p", "1"]);
    assert_eq!((v["name"].as_str(), v["twist"].as_i64(), v["shift"].as_i64()), (Some("E"), Some(2), Some(3)));
    assert_eq!(keys(&v), ["bounded", "cut", "heart", "name", "params", "shift", "twist"]);
    assert_eq!(tstab(&["classify", "--cut", "exc:a=0,b=-inf", "--p", "inf"]).code, 1);
}

#[test]
fn compare_families() {
    assert_eq!(json(&["compare", "--fine", "std", "--weak", "coarse"])["holds"], Value::Bool(true));
    let v = json(&["compare", "--fine", "std", "--weak", "exc:k=0,p=1"]);
    assert_eq!(v["holds"], Value::Bool(false));
    assert!(v["unstable_generators"].as_array().unwrap().contains(&Value::from("O(2)[0]")));
    assert_eq!(json(&["compare", "--fine", "exc:k=1,p=2", "--weak", "exc-pairs:k=1,p=2"])["holds"], Value::Bool(true));
    assert_eq!(json(&["compare", "--fine", "exc:p=inf", "--weak", "exc-columns:p=inf"])["holds"], Value::Bool(true));
    assert_eq!(tstab(&["compare", "--fine", "std:k=1", "--weak", "coarse"]).code, 2);
    assert_eq!(tstab(&["check", "finest", "--stability", "coarse"]).code, 1);
    assert_eq!(tstab(&["check", "finest", "--stability", "exc", "--p", "inf"]).code, 0);
}

#[test]
fn config_file_sets_point_order_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("session.conf");
    std::fs::write(&path, "# x on top\npoints = y, x\nk = 1\nformat = json\n").unwrap();
    let conf = path.to_str().unwrap();
    let cut = "std:m=0,K=inf,P=x";
    let valid = tstab(&["check", "cut", "--cut", cut, "--config", conf]);
    assert_eq!(valid.code, 0, "{}", valid.output);
    assert_eq!(serde_json::from_str::<Value>(&valid.output).unwrap()["valid"], Value::Bool(true));
    let overridden = tstab(&["check", "cut", "--cut", cut, "--config", conf, "--points", "x,y", "--format", "text"]);
    assert_eq!(overridden.code, 1, "{}", overridden.output);
    assert!(overridden.output.contains("INVALID"));
    let doc: Value = serde_json::from_str(&tstab(&["hn", "O(5)", "--stability", "exc", "--config", conf]).output).unwrap();
    assert_eq!(doc["family"], serde_json::json!({"family": "exceptional", "k": 1, "p": 0}));
    std::fs::write(&path, "points = x, x\n").unwrap();
    assert_eq!(tstab(&["normalize", "O(0)", "--config", conf]).code, 2);
    assert_eq!(tstab(&["normalize", "O(0)", "--config", "/nonexistent/session.conf"]).code, 2);
}

/// Random spellings of an object: summands reordered, optional `1*` and `[0]`,
/// split multiplicities and scattered whitespace.
fn spelling<R: Rng>(r: &mut R, x: &tstab::DerivedObject) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (g, m) in x.terms() {
        let atom = g.base.to_string();
        let shift = if g.shift == 0 && r.gen_bool(0.5) { String::new() } else { format!("[{}]", g.shift) };
        let split = if m > 1 && r.gen_bool(0.5) { vec![1, m - 1] } else { vec![m] };
        for k in split {
            let mult = if k == 1 && r.gen_bool(0.5) { String::new() } else { format!("{k}*") };
            parts.push(format!("{mult}{atom}{shift}"));
        }
    }
    if r.gen_bool(0.2) {
        parts.push("0".into());
    }
    parts.shuffle(r);
    let joined = parts.join("+");
    joined.chars().flat_map(|c| if r.gen_bool(0.15) { vec![' ', c] } else { vec![c] }).collect()
}

#[test]
fn parser_round_trip_corpus() {
    let mut r = rng(200);
    let objects = random_objects(200, 200, &SampleBounds::default());
    for x in &objects {
        let text = spelling(&mut r, x);
        let once = tstab(&["normalize", &text]);
        assert_eq!(once.code, 0, "`{text}`: {}", once.output);
        assert_eq!(once.output.trim(), x.to_string(), "`{text}`");
        let twice = tstab(&["normalize", once.output.trim()]);
        assert_eq!(twice.output, once.output);
    }
}

#[test]
fn binary_pipes_hn_into_check_hn() {
    let bin = env!("CARGO_BIN_EXE_tstab");
    let hn = Command::new(bin).args(["hn", "O(4) + T(p,3)[-1] + O(-2)[2]", "--stability", "exc", "--k", "1", "--p", "inf", "--format", "json"]).output().unwrap();
    assert!(hn.status.success());
    let mut check = Command::new(bin).args(["check", "hn"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    check.stdin.take().unwrap().write_all(&hn.stdout).unwrap();
    let out = check.wait_with_output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let usage = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
