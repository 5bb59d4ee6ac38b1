use std::io::Write;
use std::process::{Command, Stdio};

use viewsynth::cli::run_with;

const SEC6: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sec6_sound.vs");
const BAD_VIEWS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bad_views.vs");
const CHAIN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/chain_cq.vs");
const SQUARE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/square.vs");
const UNION: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/union_exact.vs");

fn run(args: &[&str]) -> (i32, String, String) {
    run_stdin(args, "")
}

fn run_stdin(args: &[&str], stdin: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("viewsynth").chain(args.iter().copied());
    let code = run_with(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn synth_sound_example() {
    let (code, out, _) = run(&["synth", "--mode", "sound", SEC6]);
    assert_eq!(code, 0);
    assert!(out.contains("view a1 = b1\nview a2 = b2\nview a3 = empty\n"), "{out}");
}

#[test]
fn check_reports_separating_word() {
    let (code, out, _) = run(&["check", SEC6, "--views", BAD_VIEWS]);
    assert_eq!(code, 1);
    assert!(out.contains("counterexample b1 b1"), "{out}");
}

#[test]
fn contain_exit_codes() {
    assert_eq!(run(&["contain", "--kind", "rpq", "b1.b2", "b1.(b2|b1)"]).0, 0);
    let (code, out, _) = run(&["contain", "--kind", "rpq", "b1.(b2|b1)", "b1.b2"]);
    assert_eq!(code, 1);
    assert!(out.contains("counterexample: b1 b1"), "{out}");
    assert_eq!(run(&["contain", "--kind", "2rpq", "a.b.c", "a.b.b^-.b.c"]).0, 0);
    assert_eq!(run(&["contain", "--kind", "cq", "q(x) :- r(x,y), r(y,x)", "q(x) :- r(x,y)"]).0, 0);
    assert_eq!(run(&["contain", "--kind", "ucq", "q(x) :- r(x,y)", "q(x) :- r(x,x) ; q(x) :- p(x)"]).0, 1);
}

#[test]
fn nonexistence_is_exit_one() {
    let (code, out, _) = run(&["synth", SQUARE]);
    assert_eq!(code, 1);
    assert!(out.starts_with("# not found"), "{out}");
    assert_eq!(run(&["oracle", "brute", SQUARE]).0, 1);
}

#[test]
fn json_reports_are_stable_across_workers() {
    let one = run(&["synth", UNION, "--all", "--maximal", "--format", "json", "--workers", "1"]);
    let four = run(&["synth", UNION, "--all", "--maximal", "--format", "json", "--workers", "4"]);
    assert_eq!(one.0, 0);
    assert_eq!(one.1, four.1);
    let v: serde_json::Value = serde_json::from_str(&one.1).unwrap();
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["solutions"].as_array().unwrap().len(), 2);
    assert!(v["statistics"]["monoid_size"].is_number());
}

#[test]
fn cq_synthesis_and_flags() {
    let (code, out, _) = run(&["synth", CHAIN, "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("a(u,v) :- r(u,w), s(w,v)"), "{out}");
    let (code, _, err) = run(&["synth", CHAIN, "--all"]);
    assert_eq!(code, 2);
    assert!(err.contains("unsupported"), "{err}");
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = run_stdin(&["synth", "-"], "kind rpq\nsource a\nmap a ~> zz\n");
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(run(&["synth", "/nonexistent/file.vs"]).0, 2);
    assert_eq!(run(&["synth", SEC6, "--workers", "0"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
}

#[test]
fn caps_exit_three() {
    assert_eq!(run(&["synth", SEC6, "--monoid-cap", "2"]).0, 3);
    assert_eq!(run(&["synth", UNION, "--all", "--budget", "1"]).0, 3);
}

#[test]
fn stdin_instance() {
    let text = std::fs::read_to_string(SEC6).unwrap();
    let (code, out, _) = run_stdin(&["synth", "-"], &text);
    assert_eq!(code, 0);
    assert!(out.contains("view a3 = empty"));
}

#[test]
fn monoid_listing() {
    let (code, out, _) = run(&["monoid", "--query", "b1.b2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# 3 states, 5 elements"), "{out}");
    let (_, json, _) = run(&["monoid", SEC6, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 5);
}

#[test]
fn oracle_commands() {
    let (code, out, _) = run(&["oracle", "fold", "a b b^- b c", "a b c"]);
    assert_eq!((code, out.as_str()), (0, "0 1 2 1 2 3\n"));
    assert_eq!(run(&["oracle", "fold", "a b b^- c", "a c"]).0, 1);

    let db = std::env::temp_dir().join(format!("viewsynth-cli-{}.txt", std::process::id()));
    std::fs::write(&db, "x -a-> y\ny -b-> z\n").unwrap();
    let (code, out, _) = run(&["oracle", "eval", "--db", db.to_str().unwrap(), "a.b"]);
    assert_eq!((code, out.as_str()), (0, "x z\n"));
    std::fs::write(&db, "r(1,2)\nr(2,3)\n").unwrap();
    let (_, out, _) = run(&["oracle", "eval", "--kind", "cq", "--db", db.to_str().unwrap(), "q(x,z) :- r(x,y), r(y,z)"]);
    assert_eq!(out, "1 3\n");
    std::fs::remove_file(&db).unwrap();

    let (code, out, _) = run(&["oracle", "coherence", SEC6, "--views", BAD_VIEWS]);
    assert_eq!(code, 1);
    assert!(out.contains("is a source answer but not a target answer"), "{out}");
    let (code, out, _) = run_stdin(
        &["oracle", "coherence", SEC6, "--views", "-", "--samples", "30"],
        "view a1 = b1\nview a2 = b2\nview a3 = empty\n",
    );
    assert_eq!(code, 0, "{out}");
}

#[test]
fn binary_matches_library() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_viewsynth"))
        .args(["synth", "-", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read_to_string(SEC6).unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), run_stdin(&["synth", "-", "--format", "json"], &text).1);

    let help = Command::new(env!("CARGO_BIN_EXE_viewsynth")).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
