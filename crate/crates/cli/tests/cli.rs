//! End-to-end tests of the `metabelian` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::io::Write;

use serde_json::Value;
use tempfile::TempDir;

const TWO_LOOPS: &str = r#"{"n":1,"module":{"backend":"free","rank":0},"states":1,
  "transitions":[{"from":1,"to":1,"y":[],"a":[1]},{"from":1,"to":1,"y":[],"a":[-1]}]}"#;

const ONE_LOOP: &str = r#"{"n":1,"module":{"backend":"free","rank":0},"states":1,
  "transitions":[{"from":1,"to":1,"y":[],"a":[1]}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_metabelian"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn two_loops_is_a_group() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two_loops.json", TWO_LOOPS);
    let out = run(&["decide", "group", "-i", s(&f), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "group");
    assert_eq!(v["certificate"]["run"], serde_json::json!([1, 2]));
}

#[test]
fn one_loop_is_flow_refuted() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "one_loop.json", ONE_LOOP);
    let out = run(&["decide", "group", "-i", s(&f), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "not_group");
    assert_eq!(v["certificate"]["refutation"]["kind"], "flow_infeasible");
}

#[test]
fn tampered_certificates_are_rejected() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two_loops.json", TWO_LOOPS);
    let good = write(&dir, "good.json", r#"{"run":[1,2]}"#);
    assert_eq!(run(&["check-cert", "-i", s(&f), "-c", s(&good)]).status.code(), Some(0));
    let short = write(&dir, "short.json", r#"{"run":[1]}"#);
    assert_eq!(run(&["check-cert", "-i", s(&f), "-c", s(&short)]).status.code(), Some(1));
    let one = write(&dir, "one_loop.json", ONE_LOOP);
    let neg = write(&dir, "neg.json", r#"{"refutation":{"kind":"flow_infeasible","farkas":["-1"]}}"#);
    assert_eq!(run(&["check-cert", "-i", s(&one), "-c", s(&neg)]).status.code(), Some(1));
    let pos = write(&dir, "pos.json", r#"{"refutation":{"kind":"flow_infeasible","farkas":["1"]}}"#);
    assert_eq!(run(&["check-cert", "-i", s(&one), "-c", s(&pos)]).status.code(), Some(0));
    // A valid certificate under the wrong verdict kind is invalid.
    let wrong = write(&dir, "wrong.json", r#"{"verdict":"not_group","certificate":{"run":[1,2]}}"#);
    assert_eq!(run(&["check-cert", "-i", s(&f), "-c", s(&wrong)]).status.code(), Some(1));
}

#[test]
fn examples_round_trip_and_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for (name, problem, code) in [
        ("free_abelian", "group", 0),
        ("wreath_zz", "group", 0),
        ("bs_like(2)", "group", 1),
        ("lamplighter(2)", "group", 0),
        ("parity_coset", "identity", 1),
        ("wreath_zz", "identity", 0),
    ] {
        let f = dir.path().join("inst.json");
        assert_eq!(run(&["examples", name, "-o", s(&f)]).status.code(), Some(0), "{name}");
        let first = run(&["decide", problem, "-i", s(&f), "--json"]);
        let second = run(&["decide", problem, "-i", s(&f), "--json"]);
        assert_eq!(first.status.code(), Some(code), "{name}");
        assert_eq!(first.stdout, second.stdout, "{name}: output differs between runs");
        let c = write(&dir, "cert.json", std::str::from_utf8(&first.stdout).unwrap());
        let check = run(&["check-cert", "-i", s(&f), "-c", s(&c)]);
        assert_eq!(check.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&check.stdout));
    }
}

#[test]
fn stdin_input() {
    let mut child = bin()
        .args(["decide", "group", "-i", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(TWO_LOOPS.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("group\n"));
}

#[test]
fn malformed_input_names_the_problem() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", &TWO_LOOPS.replace(r#""a":[-1]"#, r#""a":["x"]"#));
    let out = run(&["decide", "group", "-i", s(&f)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let f = write(&dir, "bad2.json", &TWO_LOOPS.replace(r#""y":[],"a":[-1]"#, r#""y":["X1"],"a":[-1]"#));
    let out = run(&["decide", "group", "-i", s(&f)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("transitions[1].y"));
    assert_eq!(run(&["decide", "group", "-i", "/nonexistent.json"]).status.code(), Some(3));
    assert_eq!(run(&["examples", "heisenberg"]).status.code(), Some(3));
}

#[test]
fn oracle_subcommand() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two_loops.json", TWO_LOOPS);
    let out = run(&["oracle", "-i", s(&f), "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["run"], serde_json::json!([1, 2]));
    let g = write(&dir, "one_loop.json", ONE_LOOP);
    let out = run(&["oracle", "-i", s(&g), "--depth", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"], "not_found");
}

#[test]
fn generator_mode() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "gens.json",
        r#"{"n":1,"module":{"backend":"free","rank":1},
            "generators":[{"y":["1"],"a":[1]},{"y":["-X1^-1"],"a":[-1]}]}"#,
    );
    let out = run(&["decide", "identity", "-g", "-i", s(&f), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "identity_yes");
    let out = run(&["decide", "group", "-g", "-i", s(&f)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn graph_dump() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "two_loops.json", TWO_LOOPS);
    let g = dir.path().join("graph.json");
    let out = run(&["decide", "group", "-i", s(&f), "--dump-graph", s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let edges: Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(edges.as_array().unwrap().len(), 2);
    assert_eq!(edges[0]["lattice"], 1);
}

/// Every shipped fixture has its documented verdict at the default budget
/// and keeps it at twice the budget.
#[test]
fn shipped_fixtures() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let inst: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let expected = inst["expected"].as_str().expect("fixtures document their verdict");
        let problem = if expected.starts_with("identity") { "identity" } else { "group" };
        for budget in ["4", "8"] {
            let out = run(&["decide", problem, "-i", s(&path), "--budget", budget, "--json"]);
            assert_eq!(json(&out)["verdict"], expected, "{}", path.display());
        }
        seen += 1;
    }
    assert!(seen >= 10);
}
