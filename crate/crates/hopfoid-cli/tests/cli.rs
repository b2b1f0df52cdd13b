use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hopfoid"));
    c.env_remove("HOPFOID_MAX_DIM");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, bytes: &[u8]) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, bytes).unwrap();
    p
}

fn built(args: &[&str]) -> Vec<u8> {
    let o = run(args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    o.stdout
}

#[test]
fn build_then_verify_from_stdin() {
    let m = built(&["build", "matrix", "--n", "2"]);
    let o = run_stdin(&["verify", "-"], &m);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("=> PASS"));
}

#[test]
fn mutated_tensor_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_slice(&built(&["build", "matrix", "--n", "2"])).unwrap();
    v["tensors"]["antipode"]["entries"][0][1] = Value::String("2".into());
    let p = write(dir.path(), "broken.json", v.to_string().as_bytes());
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL") && stdout(&o).contains(" at "), "{}", stdout(&o));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(code(&run_stdin(&["verify", "-"], b"{}")), 2);
    assert_eq!(code(&run_stdin(&["verify", "-"], b"not json")), 2);
    assert_eq!(code(&run(&["verify", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify", "--bogus-flag", "x"])), 2);
    let o = run_stdin(&["verify", "-"], br#"{"schema_version":1,"kind":"character","dim":1,"tensors":{"values":{"shape":[1],"entries":[[[0],"1/0"]]}}}"#);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.tensors.values.entries[0][1]"));
}

#[test]
fn dimension_cap_comes_from_the_environment() {
    let m = built(&["build", "matrix", "--n", "2"]);
    let mut child = bin()
        .env("HOPFOID_MAX_DIM", "3")
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&m).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the limit 3"));
}

#[test]
fn diagram_marks_the_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "g.json", &built(&["build", "groupoid", "--cyclic", "2", "--cyclic", "2"]));
    let o = run(&["diagram", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let grid = stdout(&o);
    let rows: Vec<&str> = grid.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for (i, row) in rows.iter().enumerate() {
        let marks: Vec<&str> = row.split_whitespace().skip(1).collect();
        assert_eq!(marks[i], "#", "{grid}");
        assert_eq!(marks[1 - i], ".", "{grid}");
    }
    let dot = dir.path().join("g.dot");
    assert_eq!(code(&run(&["diagram", p.to_str().unwrap(), "--emit-diagram", "dot", "-o", dot.to_str().unwrap()])), 0);
    assert!(std::fs::read_to_string(dot).unwrap().starts_with("digraph"));
}

#[test]
fn correspond_there_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.json", &built(&["build", "twisted", "--order", "4", "--sigma", "i"]));
    let cat = dir.path().join("c.json");
    let o = run(&["correspond", h.to_str().unwrap(), "--central", "-o", cat.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["verify", cat.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let back = dir.path().join("h2.json");
    assert_eq!(code(&run(&["correspond", cat.to_str().unwrap(), "-o", back.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["verify", back.to_str().unwrap()])), 0);
}

#[test]
fn galois_verdicts_set_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.json", &built(&["build", "matrix", "--n", "2"]));
    let hs = h.to_str().unwrap();
    for (kind, want) in [("regular", 0), ("trivial", 1), ("doubled", 1)] {
        let m = write(dir.path(), &format!("{kind}.json"), &built(&["build", "comodule", "--algebroid", hs, "--kind", kind]));
        let o = run(&["--json", "galois", "--algebroid", hs, "--comodule", m.to_str().unwrap(), "--correspondence"]);
        assert_eq!(code(&o), want, "{kind}: {}", stdout(&o));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["passed"], Value::Bool(true), "{kind}");
        let verdicts = v["correspondence"]["verdicts"].as_array().unwrap();
        assert!(verdicts.iter().all(|x| x["algebroid_galois"] == x["categorical_galois"]), "{kind}");
    }
}

#[test]
fn json_reports_parse() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.json", &built(&["build", "weak-matrix", "--n", "2"]));
    let o = run(&["--json", "decompose", h.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["fibers"].as_array().unwrap().len(), 4);
    assert!(v["report"]["rows"].as_array().unwrap().iter().all(|r| r["status"] != "fail"));
}

#[test]
fn disjoint_union_survives_two_conversions() {
    let m = built(&["build", "example", "groupoid-pair2+C2"]);
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "h.json", &m);
    let cat = dir.path().join("c.json");
    assert_eq!(code(&run(&["correspond", p.to_str().unwrap(), "-o", cat.to_str().unwrap()])), 0);
    let back = dir.path().join("h2.json");
    assert_eq!(code(&run(&["correspond", cat.to_str().unwrap(), "-o", back.to_str().unwrap()])), 0);
    let text = std::fs::read(&back).unwrap();
    let again = run_stdin(&["correspond", "-"], &text);
    assert_eq!(code(&again), 0);
}
