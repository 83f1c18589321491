use std::path::PathBuf;
use std::process::{Command, Output};

use downcat::corpus;
use downcat::io::{self, CategoryJson};

fn downcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_downcat")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join(name);
    std::fs::write(&p, contents).unwrap();
    (dir, p)
}

#[test]
fn validate_builtin_w3() {
    let o = downcat(&["validate", "builtin:W3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("degree: [0, 1, 2]"));
}

#[test]
fn malformed_json_is_an_input_error() {
    let (_d, p) = scratch("bad.json", "{\"objects\": [");
    assert_eq!(code(&downcat(&["validate", p.to_str().unwrap()])), 2);
    assert_eq!(code(&downcat(&["validate", "builtin:nope"])), 2);
    assert_eq!(code(&downcat(&["validate", "/no/such/file.json"])), 2);
}

#[test]
fn missing_composite_is_an_input_error() {
    let w = corpus::w3();
    let mut j = CategoryJson::from_category(&w.cat, Some(&w));
    j.compose.retain(|e| e[..2] != [4, 3]);
    let (_d, p) = scratch("w3.json", &serde_json::to_string(&j).unwrap());
    let o = downcat(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing"));
}

#[test]
fn broken_table_fails_with_witness() {
    // g∘id2 = g∘f is listed where g is expected: endpoints stay right, the unit law fails.
    let w = corpus::w3();
    let mut j = CategoryJson::from_category(&w.cat, Some(&w));
    for e in j.compose.iter_mut() {
        if e[..2] == [4, 2] {
            e[2] = 4;
        }
        if e[..2] == [1, 4] {
            e[2] = 5;
        }
    }
    let (_d, p) = scratch("w3.json", &serde_json::to_string(&j).unwrap());
    let o = downcat(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("unit law"), "{}", stdout(&o));
}

#[test]
fn down_build_reports_shape() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("d.dot");
    let json = dir.path().join("d.json");
    let o = downcat(&["down", "build", "builtin:W3", "--dot", dot.to_str().unwrap(), "--out", json.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("objects: 4") && s.contains("direct: yes"), "{s}");
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["objects"].as_array().unwrap().len(), 4);
    assert_eq!(v["objects"][3]["chain"], serde_json::json!(["g"]));
    // The embedded category is itself valid input, with its direct structure.
    let cat: CategoryJson = serde_json::from_value(v["category"].clone()).unwrap();
    let loaded = cat.into_loaded().unwrap();
    assert!(loaded.reedy.unwrap().validate().is_empty());
}

#[test]
fn down_of_ts1_is_direct() {
    let o = downcat(&["down", "build", "builtin:TS1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("direct: yes"));
}

#[test]
fn star_needs_a_length_bound() {
    let o = downcat(&["down", "build", "builtin:W3", "--star"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-len"));
    assert_eq!(code(&downcat(&["down", "build", "builtin:W3", "--star", "--max-len", "1"])), 0);
}

#[test]
fn size_bound_is_a_resource_error() {
    assert_eq!(code(&downcat(&["--bound", "3", "down", "build", "builtin:W3"])), 3);
}

#[test]
fn hom_prints_maxima() {
    let o = downcat(&["hom", "builtin:W3", "--src", "[0]:0", "--dst", "[1]:g"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("2 elements") && s.contains("(1|g∘f)  max") && s.contains("hasse: 0<1"), "{s}");
    assert_eq!(code(&downcat(&["hom", "builtin:W3", "--src", "[7]:x"])), 2);
}

#[test]
fn localize_commands() {
    let o = downcat(&["localize", "check", "builtin:W3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("point.json"), io::to_json(&downcat::fincat::build::terminal(), None)).unwrap();
    let o = downcat(&["localize", "check", "builtin:W3", "--probes", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("probe point"));
    assert_eq!(code(&downcat(&["localize", "counterexample"])), 0);
}

#[test]
fn horn_certificate_is_json() {
    let o = downcat(&["--json", "sset", "run", "horns", "--n", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let steps = v["certificate"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["core_label"], "00,01,11");
    assert_eq!(steps[0]["position"], 1);
    assert_eq!(code(&downcat(&["sset", "run", "horns-i", "--n", "1"])), 0);
}

#[test]
fn small_sset_runs() {
    assert_eq!(code(&downcat(&["sset", "run", "cylinder", "--dim", "1"])), 0);
    assert_eq!(code(&downcat(&["sset", "run", "connecting", "--n", "1", "--dim", "1"])), 0);
    assert_eq!(code(&downcat(&["sset", "run", "comparison", "--dim", "1"])), 0);
}

#[test]
fn export_round_trips() {
    let o = downcat(&["export", "builtin:C'"]);
    assert_eq!(code(&o), 0);
    let l = io::parse_category(&stdout(&o)).unwrap();
    assert_eq!(l.reedy.unwrap(), corpus::c_prime());
}

#[test]
fn selftest_quick_emits_json() {
    let o = downcat(&["--json", "--profile", "quick", "selftest"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let suites: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites.len(), 12);
    let horns = v.as_array().unwrap().iter().find(|r| r["suite"] == "horns").unwrap();
    assert!(horns["checks"].as_array().unwrap().iter().all(|c| c["name"] != "plain n=3"));
}
