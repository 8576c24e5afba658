use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn superloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superloop")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const SL21: &str = r#"{"type":"sl","m":2,"n":1}"#;

fn tau_spec(points: &str, mults: &str, lambda: &str, window: &str) -> String {
    format!(
        r#"{{"schema":"v1","algebra":{SL21},"kind":"tau","lambda":{lambda},"a":{points},"mults":{mults},"tau_window":{window}}}"#
    )
}

#[test]
fn algebra_info_dimensions() {
    let o = superloop(&["algebra", "info", SL21]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["positive_roots"]["odd_count"], 2);
    assert_eq!(v["schema"], "v1");

    let v = stdout_json(&superloop(&["algebra", "info", r#"{"type":"C","m":3}"#]));
    assert_eq!(v["dim"], 19);
    let v = stdout_json(&superloop(&["algebra", "info", "sl(3,1)"]));
    assert_eq!(v["dim"], 15);
}

#[test]
fn equal_rank_is_rejected() {
    let o = superloop(&["algebra", "info", r#"{"type":"sl","m":2,"n":2}"#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("A(n,n) out of scope"));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_usage_exits_two() {
    assert_eq!(superloop(&["algebra", "info", "gl(2)"]).status.code(), Some(2));
    assert_eq!(superloop(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(superloop(&["--window", "3..1", "algebra", "info", "C(3)"]).status.code(), Some(2));
}

#[test]
fn module_build_dumps_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let trivial = write(&dir, "trivial.json", &tau_spec(r#"["1"]"#, "[1]", "[[0,0,0]]", r#"["0"]"#));
    let v = stdout_json(&superloop(&["module", "build", "--spec", trivial.to_str().unwrap()]));
    assert_eq!(v["dim"], 1);

    let linear = write(&dir, "linear.json", &tau_spec(r#"["1"]"#, "[2]", "[[0,0,0]]", r#"["0","1"]"#));
    let o = superloop(&["module", "build", "--spec", linear.to_str().unwrap(), "--window", "-2..2"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["evaluation"], false);
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["annihilator"]["verdict"], "pass");
    assert_eq!(v["slices"].as_array().unwrap().len(), 5);
    assert!(!o.stderr.is_empty(), "progress goes to stderr");

    // the extracted spec builds the same module
    let again = write(&dir, "again.json", &serde_json::to_string(&v["spec"]).unwrap());
    let w = stdout_json(&superloop(&["module", "build", "--spec", again.to_str().unwrap(), "--window", "-2..2"]));
    assert_eq!(w["spec"], v["spec"]);
    assert_eq!(w["weights"], v["weights"]);
}

#[test]
fn evaluation_dimension_and_decomposition() {
    let dir = TempDir::new().unwrap();
    // λ = 2ε1 + δ1 is typical ((λ+ρ, ε_i − δ1) = 4, 1 with ρ = −ε2 + δ1): dim 4·3
    let one = format!(r#"{{"schema":"v1","algebra":{SL21},"kind":"evaluation","lambda":[[2,0,1]],"a":["3"]}}"#);
    let p = write(&dir, "one.json", &one);
    let v = stdout_json(&superloop(&["module", "build", "--spec", p.to_str().unwrap()]));
    assert_eq!(v["dim"], 12);
    assert_eq!(v["evaluation"], true);
    // 2ε1 itself is atypical: the super-symmetric square, dim 3 + 2
    let atyp = one.replace("[[2,0,1]]", "[[2,0,0]]");
    let p = write(&dir, "atyp.json", &atyp);
    assert_eq!(stdout_json(&superloop(&["module", "build", "--spec", p.to_str().unwrap()]))["dim"], 5);

    let two = format!(r#"{{"schema":"v1","algebra":{SL21},"kind":"loop","lambda":[[1,0,0],[1,0,0]],"a":["1","-1"]}}"#);
    let p = write(&dir, "two.json", &two);
    let v = stdout_json(&superloop(&["module", "build", "--spec", p.to_str().unwrap()]));
    assert_eq!(v["period"], 2);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "s.json", &tau_spec(r#"["2"]"#, "[2]", "[[1,0,0]]", r#"["1","3"]"#));
    let a = superloop(&["module", "build", "--spec", p.to_str().unwrap()]);
    let b = superloop(&["module", "build", "--spec", p.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let a = superloop(&["verify", "hw", "t0"]);
    let b = superloop(&["verify", "hw", "t0"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_keys_are_sorted() {
    let v = superloop(&["algebra", "info", "C(3)"]);
    let text = String::from_utf8(v.stdout).unwrap();
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn verify_exit_codes() {
    let o = superloop(&["verify", "structure", "controls"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for line in String::from_utf8(o.stdout).unwrap().lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        assert!(r.get("millis").is_none());
        assert!(r["verdict"] == r["expected"]);
    }

    let o = superloop(&["verify", "structure", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    let failing: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|r| r["verdict"] != r["expected"])
        .collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0]["witness"].is_object() || failing[0]["witness"].is_array());

    assert_eq!(superloop(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_accepts_user_specs() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "user.json", &tau_spec(r#"["3"]"#, "[2]", "[[1,0,0]]", r#"["1","1"]"#));
    let o = superloop(&["verify", "main", "--no-corpus", "--spec", p.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("user.json"), "{out}");
}

#[test]
fn iso_verdicts() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &tau_spec(r#"["2","1/3"]"#, "[2,1]", "[[1,0,0],[0,0,0]]", r#"["1","-2","5"]"#));
    let v = stdout_json(&superloop(&["iso", a.to_str().unwrap(), a.to_str().unwrap()]));
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["witness"]["kappa"], "1");

    // points negated and τ twisted by (−1)^s
    let b = write(&dir, "b.json", &tau_spec(r#"["-2","-1/3"]"#, "[2,1]", "[[1,0,0],[0,0,0]]", r#"["1","2","5"]"#));
    let o = superloop(&["iso", "--spec", a.to_str().unwrap(), "--spec", b.to_str().unwrap()]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["isomorphic_gprime"], false);
    assert_eq!(v["witness"]["kappa"], "-1");

    let c = write(&dir, "c.json", &tau_spec(r#"["2","1/3"]"#, "[2,1]", "[[2,0,0],[0,0,0]]", r#"["1","-2","5"]"#));
    let v = stdout_json(&superloop(&["iso", a.to_str().unwrap(), c.to_str().unwrap()]));
    assert_eq!(v["isomorphic"], false);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn schema_version_is_required() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "old.json", &tau_spec(r#"["1"]"#, "[1]", "[[0,0,0]]", r#"["0"]"#).replace("v1", "v0"));
    let o = superloop(&["module", "build", "--spec", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema"));
}

#[test]
fn thread_cap_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_superloop"))
        .args(["verify", "structure"])
        .env("SUPERLOOP_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
