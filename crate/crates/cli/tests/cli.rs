use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use whitehead::{MinimizationTrace, Word};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whitehead"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs with `--json`, checks the exit code and the schema, returns the value.
fn run_json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} output fails the schema: {errors:?}\n{v:#}");
    v
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const SIX: &str = "# six vertices, rank 5\nagraph 6 5\n0 a 3\n0 b 1\n1 d 2\n4 c 2\n4 d 5\n2 e 5\n3 a 4\n1 c 4\n4 a 1\n";
const GAMMA1: &str = "agraph 3 2 0\n0 a 1\n0 b 2\n1 a 2\n2 b 1\n";

#[test]
fn primitive_verdicts() {
    let o = run(&["is-primitive", "ab", "--rank", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "primitive: yes\n");
    let o = run(&["is-primitive", "abAB"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "primitive: no\n"));
    let o = run(&["is-primitive", "abAB", "--exit-status"]);
    assert_eq!(code(&o), 1);
    let o = run(&["is-primitive", "ab", "--exit-status"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn free_factor_verdicts() {
    assert_eq!(stdout(&run(&["is-free-factor", "abA"])), "free-factor: yes\n");
    assert_eq!(stdout(&run(&["is-free-factor", "aa,b"])), "free-factor: no\n");
    assert_eq!(code(&run(&["is-free-factor", "aa,b", "--exit-status"])), 1);
    let v = run_json(&["is-free-factor", "abA,a", "--witness"]);
    assert_eq!(v["free-factor"], true);
    assert_eq!(v["minimal_size"], 1);
    assert!(v["trace"].is_array());
}

#[test]
fn subgroup_json_starts_at_three() {
    let v = run_json(&["minimize-subgroup", "aaB,bbA", "--rank", "2"]);
    assert_eq!(v["size_history"][0], 3);
    assert_eq!(v["input"], serde_json::json!(["aaB", "bbA"]));
    assert!(v["minimal"]["graph"].as_str().unwrap().starts_with("agraph 3 2"));
}

#[test]
fn empty_and_malformed_words_are_usage_errors() {
    let o = run(&["minimize-word", ""]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("empty"));
    let o = run(&["minimize-word", "ab?c"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("\"?\""), "{}", stderr(&o));
    let o = run(&["is-primitive", "abc", "--rank", "2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("rank 2"));
    assert_eq!(code(&run(&["minimize-word"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn word_witness_replays() {
    for u in ["babAB", "abAAbaBBa", "aabAbbbA", "abcABCacb"] {
        let v = run_json(&["minimize-word", u, "--witness"]);
        let trace: MinimizationTrace = serde_json::from_value(v["trace"].clone()).unwrap();
        let minimal = Word::parse(v["minimal"].as_str().unwrap()).unwrap();
        assert_eq!(trace.apply_to_word(&Word::parse(u).unwrap()), minimal, "{u}");
        let history = v["size_history"].as_array().unwrap();
        assert_eq!(history[0], u.len());
        assert_eq!(history.len(), trace.len() + 1);
    }
    let o = run(&["minimize-word", "babAB", "--witness"]);
    let text = stdout(&o);
    assert!(text.starts_with("minimal: "));
    assert!(text.contains("\nwitness: ["));
}

#[test]
fn cyclic_words() {
    let v = run_json(&["minimize-cyclic", "abab"]);
    assert_eq!(v["minimal"].as_str().unwrap().len(), 2);
    // the conjugate a(ab)A is read through its cyclic core
    let v = run_json(&["minimize-cyclic", "aabA"]);
    assert_eq!(v["input"], "ab");
    assert_eq!(v["minimal"].as_str().unwrap().len(), 1);
}

#[test]
fn graph_file_commands() {
    let dir = tempfile::tempdir().unwrap();
    let six = write_temp(&dir, "six.txt", SIX);
    let v = run_json(&["minimize-conjugacy", &six]);
    let history: Vec<u64> = v["size_history"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(history.first(), Some(&6));
    assert!(history.windows(2).all(|p| p[1] < p[0]));

    let v = run_json(&["hypergraph", &six]);
    assert_eq!(v["hyperedges"].as_array().unwrap().len(), 6);
    let o = run(&["hypergraph", &six, "--dump-network", "a"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).starts_with("digraph network {"));

    let g1 = write_temp(&dir, "g1.txt", GAMMA1);
    let o = run(&["export-dot", &g1]);
    assert!(stdout(&o).contains("0 [shape=doublecircle]"));
    assert_eq!(stdout(&o).matches("->").count(), 4);
    run_json(&["export-dot", &g1]);

    let bouquet = write_temp(&dir, "b.txt", "agraph 5 2 0\n0 a 1\n1 a 2\n2 B 0\n0 b 3\n3 b 4\n4 A 0\n");
    let o = run(&["fold", &bouquet]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("agraph 3 2 0\n"));
    let v = run_json(&["fold", &bouquet]);
    assert_eq!(v["size"], 3);

    let o = run(&["minimize-conjugacy", &g1, "--rank", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("rank mismatch"));
}

#[test]
fn graph_file_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    for (text, line) in [
        ("agraph 2 2\n0 a 1\n# comment\n0 c 1\n", "line 4"),
        ("agraph 2 2\n0 a 1\n0 a 1\n", "line 3"),
        ("agraph 2 2\n0 a 7\n", "line 2"),
    ] {
        let f = write_temp(&dir, "bad.txt", text);
        let o = run(&["fold", &f]);
        assert_eq!(code(&o), 2);
        assert!(stderr(&o).contains(line), "{}", stderr(&o));
    }
    let o = run(&["fold", "/nonexistent/graph.txt"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn tuple_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "tuple.txt", "cyclic ab\ncyclic BA\n");
    let v = run_json(&["minimize-tuple", &f]);
    assert_eq!(v["size_history"][0], 4);
    assert_eq!(v["size_history"].as_array().unwrap().last().unwrap(), 2);
    assert_eq!(v["minimal"].as_array().unwrap().len(), 2);
}

#[test]
fn oracle_check_runs_and_guards() {
    let v = run_json(&["oracle-check", "--rank", "3", "--cases", "20", "--seed", "5"]);
    assert_eq!(v["mincut_mismatches"], 0);
    assert_eq!(v["mincut_checks"], 60);
    let o = run(&["oracle-check", "--rank", "12", "--cases", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("exhaustive search"));
}

#[test]
fn thread_cap_is_accepted() {
    let o = run(&["minimize-word", "abAAbaBBa", "--threads", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), stdout(&run(&["minimize-word", "abAAbaBBa"])));
}
