use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn springer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer")).args(args).arg("--quiet").output().expect("binary runs")
}

fn springer_loud(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let out = springer(&all);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.code().unwrap())
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report-v1.json");
    let text = std::fs::read_to_string(path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(doc: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:?}");
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn enumerate_rank_two_is_identity_only() {
    let (doc, code) = json(&["enumerate-f", "--n", "2"]);
    assert_eq!(code, 0);
    assert_valid(&doc);
    let items = doc["box_elements"].as_array().unwrap();
    assert_eq!(items.len(), 1);
    assert_eq!(items[0]["element"], "perm=[1,2];trans=[0,0]");
}

#[test]
fn enumerate_rank_three_matches_schema() {
    let (doc, code) = json(&["enumerate-f", "--n", "3"]);
    assert_eq!(code, 0);
    assert_valid(&doc);
    let words: Vec<_> = doc["box_elements"].as_array().unwrap().iter().map(|b| b["word"].clone()).collect();
    assert_eq!(words, vec![Value::from("e"), Value::from("s0")]);
    let (windowed, code) = json(&["enumerate-f", "--n", "3", "--window", "3"]);
    assert_eq!(code, 0);
    assert_eq!(windowed["box_elements"], doc["box_elements"]);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["enumerate-f", "--n", "3", "--json", "-"],
        vec!["fixed-points", "--n", "3", "--x", "s0", "--json", "-"],
        vec!["verify-theorem", "--n", "3", "--seed", "42", "--json", "-"],
        vec!["identities", "--n", "3", "--json", "-"],
    ] {
        let a = springer(&args);
        let b = springer(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn rank_two_fixed_points() {
    let (doc, code) = json(&["fixed-points", "--n", "2", "--x", "e", "--method", "all"]);
    assert_eq!(code, 0);
    assert_valid(&doc);
    let c = &doc["components"][0];
    let expected = strings(&c["expected"]);
    assert_eq!(expected, vec!["perm=[1,2];trans=[0,0]", "perm=[2,1];trans=[0,0]"]);
    for m in ["certificate", "symbolic", "randomized", "oracle"] {
        assert_eq!(strings(&c["computed"][m]), expected, "{m}");
        assert_eq!(c["agrees"][m], true);
    }
    let names: Vec<_> = c["certificates"][0]["verdicts"][0]["methods"].as_object().unwrap().keys().cloned().collect();
    assert_eq!(names, vec!["certificate", "randomized", "symbolic"]);
    assert!(c["certificates"][0]["oracle"]["member"].as_bool().unwrap());
}

#[test]
fn certificate_report_fields() {
    let (doc, code) = json(&["fixed-points", "--n", "3", "--x", "s0", "--y", "e"]);
    assert_eq!(code, 0);
    assert_valid(&doc);
    let certs = doc["components"][0]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 1);
    let c = &certs[0];
    assert_eq!(c["expected"], true);
    // At vertex 0 the 3x3 determinant has leading monomial A_3_1.
    let v0 = &c["verdicts"][0]["methods"]["certificate"];
    assert_eq!(v0["verdict"], "NonZero");
    assert_eq!(v0["size"], 3);
    assert_eq!(v0["monomial"], serde_json::json!([[3, 1, 1]]));
    assert_eq!(v0["coefficient"], "1/1");
    assert_eq!(c["verdicts"][0]["methods"]["symbolic"]["verdict"], "NonZero");
    assert!(c["witness"].as_object().unwrap().contains_key("A_3_1"));
}

#[test]
fn methods_can_be_selected() {
    let (doc, code) = json(&["fixed-points", "--n", "3", "--x", "s0", "--method", "certificate,oracle"]);
    assert_eq!(code, 0);
    assert_valid(&doc);
    assert_eq!(strings(&doc["methods"]), vec!["certificate", "oracle"]);
}

#[test]
fn verify_theorem_passes_for_small_ranks() {
    for n in ["2", "3"] {
        let (doc, code) = json(&["verify-theorem", "--n", n]);
        assert_eq!(code, 0, "n={n}");
        assert_valid(&doc);
        assert_eq!(doc["status"], "pass");
        assert_eq!(doc["summary"]["failed"], 0);
    }
}

#[test]
fn injected_fault_fails() {
    let (doc, code) = json(&["verify-theorem", "--n", "3", "--inject-fault"]);
    assert_eq!(code, 1);
    assert_valid(&doc);
    assert_eq!(doc["status"], "mismatch");
    let out = springer(&["fixed-points", "--n", "2", "--x", "e", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let (doc, code) = json(&["verify-theorem", "--n", "4", "--budget-seconds", "0", "--method", "certificate"]);
    assert_eq!(code, 3);
    assert_valid(&doc);
    assert_eq!(doc["partial"], true);
    assert_eq!(doc["status"], "inconclusive");
}

#[test]
fn identities_report_the_reading() {
    let (doc, code) = json(&["identities", "--n", "3"]);
    assert_eq!(code, 0);
    assert_valid(&doc);
    assert_eq!(doc["c_prime_reading"]["chosen"], "chain-start");
    assert_eq!(doc["identities"].as_array().unwrap().len(), 12);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["fixed-points", "--n", "3", "--x", "s1"],
        vec!["fixed-points", "--n", "3", "--x", "nonsense"],
        vec!["enumerate-f", "--n", "1"],
        vec!["verify-theorem", "--n", "4"],
        vec!["verify-theorem", "--n", "3", "--trials", "0"],
        vec!["alcove-svg", "--n", "4"],
        vec!["frobnicate"],
    ] {
        assert_eq!(springer(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn progress_is_json_lines() {
    let out = springer_loud(&["verify-theorem", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stderr).unwrap();
    let events: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).expect("one object per line")).collect();
    assert_eq!(events.iter().filter(|e| e["event"] == "component").count(), 2);
    assert_eq!(events.last().unwrap()["event"], "finished");
}

#[test]
fn timings_only_on_request() {
    let (plain, _) = json(&["enumerate-f", "--n", "2"]);
    assert!(plain.get("timings_ms").is_none());
    let (timed, _) = json(&["enumerate-f", "--n", "2", "--timings"]);
    assert!(timed["timings_ms"]["total"].is_u64());
    assert_valid(&timed);
}

fn parse_svg(text: &str) -> Vec<(String, String)> {
    let doc = roxmltree::Document::parse(text).expect("well-formed SVG");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.tag_name().namespace(), Some("http://www.w3.org/2000/svg"));
    root.descendants()
        .filter(|n| n.has_attribute("class"))
        .map(|n| (n.tag_name().name().to_string(), n.attribute("class").unwrap().to_string()))
        .collect()
}

#[test]
fn rank_three_svg() {
    let out = springer_loud(&["alcove-svg", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let cells = parse_svg(std::str::from_utf8(&out.stdout).unwrap());
    assert!(cells.iter().all(|(tag, _)| tag == "polygon"));
    assert_eq!(cells.iter().filter(|(_, c)| c == "box" || c == "fundamental").count(), 2);

    let dir = std::env::temp_dir().join(format!("springer-svg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s0.svg");
    let out = springer_loud(&["alcove-svg", "--n", "3", "--x", "s0", "--svg", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let cells = parse_svg(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(cells.iter().filter(|(_, c)| c == "fixed").count(), 12);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn rank_two_svg() {
    let out = springer_loud(&["alcove-svg", "--n", "2", "--x", "e"]);
    assert_eq!(out.status.code(), Some(0));
    let cells = parse_svg(std::str::from_utf8(&out.stdout).unwrap());
    assert!(cells.iter().all(|(tag, _)| tag == "rect"));
    assert_eq!(cells.iter().filter(|(_, c)| c == "fixed").count(), 2);
}
