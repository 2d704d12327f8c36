use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    json: Value,
    stdout: String,
}

fn grassfrieze(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_grassfrieze"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap(),
        json,
        stdout,
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const THREES: &str = r#"{"k":2,"n":3,"values":{"1,2":"3","1,3":"3","2,3":"3"}}"#;
const TWOS: &str = r#"{"k":2,"n":3,"values":{"1,2":"2","1,3":"2","2,3":"2"}}"#;
const SQUARE_ONES: &str =
    r#"{"k":2,"n":4,"values":{"1,2":"1","1,3":"1","1,4":"1","2,3":"1","2,4":"1","3,4":"1"}}"#;

#[test]
fn realize_and_check() {
    let dir = TempDir::new().unwrap();
    let threes = write(&dir, "threes.json", THREES);
    let r = grassfrieze(&["realize", "--spec", &threes]);
    assert_eq!(r.code, 0);
    assert!(r.json["matrix"][0][0].is_string(), "integers are strings: {}", r.stdout);

    assert_eq!(grassfrieze(&["check", "--spec", &threes]).json["consistent"], true);
    let bad = write(&dir, "square.json", SQUARE_ONES);
    let r = grassfrieze(&["check", "--spec", &bad]);
    assert_eq!(r.code, 1);
    assert!(r.json["violation"]["value"].is_string());
    assert_eq!(grassfrieze(&["realize", "--spec", &bad]).code, 2);
}

#[test]
fn volume_one_verbs() {
    let dir = TempDir::new().unwrap();
    let threes = write(&dir, "threes.json", THREES);
    let twos = write(&dir, "twos.json", TWOS);
    assert_eq!(grassfrieze(&["volume-one", "check", "--spec", &threes]).code, 0);
    let r = grassfrieze(&["volume-one", "check", "--spec", &twos]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["failed_condition"]["prime"], "2");
    let r = grassfrieze(&["volume-one", "construct", "--spec", &threes]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["matrix"].as_array().unwrap().len(), 2);
    assert_eq!(grassfrieze(&["volume-one", "construct", "--spec", &twos]).code, 1);
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.json", "{not json");
    let zero = write(&dir, "zero.json", r#"{"k":2,"n":3,"values":{"1,2":"0","1,3":"1","2,3":"1"}}"#);
    let missing = write(&dir, "missing.json", r#"{"k":2,"n":3,"values":{"1,2":"1"}}"#);
    for spec in [&junk, &zero, &missing, &"/nonexistent.json".to_string()] {
        let r = grassfrieze(&["volume-one", "check", "--spec", spec]);
        assert_eq!(r.code, 2, "{spec}: {}", r.stdout);
        assert!(r.json["error"].is_string());
    }
    assert_eq!(grassfrieze(&["frieze", "cc", "--n", "2"]).code, 2);
    assert_eq!(grassfrieze(&["frieze", "triangle", "1", "-2", "3"]).code, 2);
    assert_eq!(grassfrieze(&["arrangements", "roots", "--matrix", &junk, "--system", "A3"]).code, 2);
    assert_eq!(grassfrieze(&["no-such-verb"]).code, 2);
}

#[test]
fn resource_limit_exits_3() {
    let dir = TempDir::new().unwrap();
    let threes = write(&dir, "threes.json", THREES);
    assert_eq!(grassfrieze(&["--limit", "2", "realize", "--spec", &threes]).code, 3);
    assert_eq!(grassfrieze(&["frieze", "cc", "--n", "13"]).code, 2);
}

#[test]
fn frieze_verbs() {
    let r = grassfrieze(&["frieze", "cc", "--n", "5", "--diagonals", "1-3,1-4"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["values"]["2,5"], "3");
    let p = grassfrieze(&["--pretty", "frieze", "cc", "--n", "5", "--diagonals", "1-3,1-4"]);
    assert!(serde_json::from_str::<Value>(&p.stdout).is_err(), "pretty output is a table");

    assert_eq!(grassfrieze(&["frieze", "triangle", "2", "3", "5"]).code, 0);
    assert_eq!(grassfrieze(&["frieze", "triangle", "2", "2", "2"]).code, 1);

    let r = grassfrieze(&["frieze", "oracle-triangles", "--n-max", "9", "--label-max", "6"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json["rejected_but_realized"].as_array().unwrap().len(), 0);
}

#[test]
fn extend_writes_trace() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"[["1","1","-1"],["0","3","2"]]"#);
    let trace = dir.path().join("trace.json");
    let r = grassfrieze(&["frieze", "extend", "--matrix", &m, "--trace", trace.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(saved, r.json);
    let steps = saved["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    assert_eq!(steps.last().unwrap()["d_after"], "1");
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn arrangement_verbs() {
    let a3 = fixtures().join("a3.json");
    let a3 = a3.to_str().unwrap();
    let r = grassfrieze(&["arrangements", "lines", "--matrix", a3]);
    assert_eq!(r.json["count"], 6);
    assert_eq!(grassfrieze(&["arrangements", "roots", "--matrix", a3, "--system", "A3"]).code, 0);
    assert_eq!(grassfrieze(&["arrangements", "roots", "--matrix", a3, "--system", "B3"]).code, 1);
    assert_eq!(grassfrieze(&["arrangements", "roots", "--matrix", a3, "--system", "G2"]).code, 2);

    let dir = TempDir::new().unwrap();
    let v: Value = serde_json::from_str(&std::fs::read_to_string(a3).unwrap()).unwrap();
    let cluster = write(&dir, "cluster.json", &v["cluster"].to_string());
    assert_eq!(
        grassfrieze(&["arrangements", "verify", "--matrix", a3, "--cluster", &cluster]).code,
        0
    );
}

#[test]
fn fixtures_verify_detects_damage() {
    assert_eq!(grassfrieze(&["fixtures", "verify"]).code, 0);

    let dir = TempDir::new().unwrap();
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    assert_eq!(grassfrieze(&["fixtures", "verify", "--dir", d]).code, 0);

    // corrupt one matrix entry: a named failure, exit 1
    let b3 = dir.path().join("b3.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&b3).unwrap()).unwrap();
    v["matrix"][0][0] = Value::String("7".into());
    std::fs::write(&b3, v.to_string()).unwrap();
    let r = grassfrieze(&["fixtures", "verify", "--dir", d]);
    assert_eq!(r.code, 1);
    let failed: Vec<&str> = r.json["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["passed"] == false)
        .map(|x| x["name"].as_str().unwrap())
        .collect();
    assert!(failed.iter().all(|n| n.starts_with("b3")), "{failed:?}");
    assert!(!failed.is_empty());

    // missing file: input error
    std::fs::remove_file(dir.path().join("a3.json")).unwrap();
    assert_eq!(grassfrieze(&["fixtures", "verify", "--dir", d]).code, 2);
}

#[test]
fn seeded_oracles_are_reproducible() {
    let a = grassfrieze(&["--seed", "9", "oracle", "subpolygon", "--count", "20"]);
    let b = grassfrieze(&["--seed", "9", "oracle", "subpolygon", "--count", "20"]);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(grassfrieze(&["oracle", "realize", "--count", "30"]).code, 0);
}
