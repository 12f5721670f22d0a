use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use raag::checks::Inputs;
use raag::fixtures::Fixture;
use raag::report::Outcome;
use raag::sample::{stream, Sampler};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.txt"))
}

fn raag(args: &[&str], graph: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raag")).args(args).arg("-g").arg(fixture(graph)).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("one JSON document")
}

#[test]
fn eval_examples() {
    assert_eq!(stdout(&raag(&["eval", "meet", "a b", "a c"], "f2xz")), "a\n");
    assert_eq!(stdout(&raag(&["eval", "normalize", "a c a^-1"], "f2xz")), "c\n");
    assert_eq!(stdout(&raag(&["eval", "len", ""], "f2xz")), "0\n");
    assert_eq!(stdout(&raag(&["eval", "mul", "a b", "b^-1 c"], "f2xz")), "a c\n");
}

#[test]
fn dynamics_examples() {
    assert_eq!(stdout(&raag(&["dyn", "conj", "a b", "b a"], "free2")), "true\nconjugator: a\n");
    assert_eq!(stdout(&raag(&["dyn", "conj", "a b", "a b^-1"], "free2")), "false\n");
    assert_eq!(stdout(&raag(&["dyn", "phi", "--w", "b", "--x", "a"], "free2")), "1\n");
    assert_eq!(stdout(&raag(&["dyn", "qdir", "--w", "b", "1", "a"], "free2")), "1\n");
}

#[test]
fn structure_examples() {
    let d = json(&raag(&["struct", "decompose", "a^2 c^3", "--json"], "f2xz"));
    assert_eq!(d["command"], "struct decompose");
    assert_eq!(d["result"]["conjugator"], "1");
    assert_eq!(d["result"]["pairs"], serde_json::json!([{"p": "a", "m": 2}, {"p": "c", "m": 3}]));
    assert_eq!(stdout(&raag(&["struct", "center"], "f2xz")), "c\n");
    assert_eq!(stdout(&raag(&["struct", "prim", "a c"], "f2xz")), "false\n");
    let z = json(&raag(&["struct", "centralizer", "c", "--json"], "f2xz"));
    assert_eq!(z["result"]["raag_gens"], serde_json::json!(["a", "b"]));
    assert_eq!(z["result"]["abelian_gens"], serde_json::json!(["c"]));
}

#[test]
fn documents_carry_command_and_config() {
    let d = json(&raag(&["eval", "len", "a b", "--json"], "z2"));
    assert_eq!(d["result"], 2);
    assert_eq!(d["config"]["generators"], serde_json::json!(["a", "b"]));
    let r = json(&raag(&["check", "cyclic", "--samples", "70", "--seed", "3", "--json"], "z2"));
    assert_eq!(r["command"], "check cyclic");
    assert_eq!(r["config"]["samples"], 70);
    assert_eq!(r["config"]["seed"], 3);
    assert_eq!(r["report"]["total_failures"], 0);
    let checks = r["report"]["suites"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["samples"] == 70));
    assert!(r.get("result").is_none());
}

#[test]
fn check_examples_exit_zero() {
    assert!(stdout(&raag(&["check", "qdir", "--samples", "200", "--seed", "1"], "free2")).contains("total failures: 0"));
    assert!(stdout(&raag(&["check", "structure", "--samples", "100", "--seed", "42"], "f2xz"))
        .contains("total failures: 0"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(raag(&["eval", "normalize", "a x"], "f2xz").status.code(), Some(2));
    assert_eq!(raag(&["eval", "normalize", "a^"], "f2xz").status.code(), Some(2));
    assert_eq!(raag(&["check", "nonsense"], "f2xz").status.code(), Some(2));
    assert_eq!(raag(&["eval", "len", "a", "--interval-cap", "0"], "f2xz").status.code(), Some(2));
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "gens: a b\nedge: a z").unwrap();
    let out =
        Command::new(env!("CARGO_BIN_EXE_raag")).args(["eval", "len", "a", "-g"]).arg(bad.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn preconditions_exit_two() {
    assert_eq!(raag(&["struct", "hbasis", "a b a^-1"], "free2").status.code(), Some(2));
}

#[test]
fn caps_exit_three() {
    let out = raag(&["eval", "interval", "--interval-cap", "2", "1", "a c b"], "f2xz");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn custom_graph_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# a path\ngens: x y z\nedge: x y\nedge: y z").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_raag"))
        .args(["eval", "normalize", "z x y x^-1", "-g"])
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "y z\n");
}

/// Failure records are `name=word` strings whose words parse back to the
/// sampled elements, through the library and through the binary.
#[test]
fn failure_records_replay() {
    let g = Fixture::F2xZ.raag();
    let mut s = Sampler::new(&g, stream(5, "replay", 0), 8);
    for _ in 0..50 {
        let (x, y) = (s.element(), s.element());
        let Outcome::Fail(words) = Inputs::new(&g).el("x", &x).el("y", &y).verdict(false) else {
            panic!("a false verdict is a failure");
        };
        let parsed: Vec<_> = words.iter().map(|w| g.parse(w.split_once('=').unwrap().1).unwrap()).collect();
        assert_eq!(parsed, vec![x.clone(), y.clone()]);
        let word = words[0].split_once('=').unwrap().1;
        let replayed = stdout(&raag(&["eval", "normalize", word], "f2xz"));
        assert_eq!(replayed.trim_end(), word);
        let expected = g.render(&g.meet(&x, &y));
        let meet = stdout(&raag(&["eval", "meet", word, words[1].split_once('=').unwrap().1], "f2xz"));
        assert_eq!(meet.trim_end(), expected);
    }
}
