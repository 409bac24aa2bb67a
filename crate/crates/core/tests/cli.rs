use std::io::Write;
use std::process::{Command, Stdio};

use poset_automata::text::parse_nfa;

const BIN: &str = env!("CARGO_BIN_EXE_poset-automata");
const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str], stdin: &str) -> Out {
    run_env(args, stdin, None)
}

fn run_env(args: &[&str], stdin: &str, caps: Option<&str>) -> Out {
    let mut cmd = Command::new(BIN);
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    cmd.env_remove("POSET_AUTOMATA_CAPS");
    if let Some(c) = caps {
        cmd.env("POSET_AUTOMATA_CAPS", c);
    }
    let mut child = cmd.spawn().unwrap();
    // the child may exit before reading its input
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    let out = child.wait_with_output().unwrap();
    Out {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

fn aknn(k: u32, n: u32) -> String {
    let out = run(
        &["gen-aknn", "--k", &k.to_string(), "--n", &n.to_string()],
        "",
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

#[test]
fn generated_aknn_classifies_as_ptnfa() {
    let out = run(&["classify", "-"], &aknn(2, 2));
    assert_eq!(out.code, 0);
    assert!(
        out.stdout.lines().any(|l| l == "class: ptNFA"),
        "{}",
        out.stdout
    );
}

#[test]
fn classify_expectation_sets_the_exit_code() {
    let text = aknn(2, 2);
    assert_eq!(run(&["classify", "--expect", "ptNFA", "-"], &text).code, 0);
    assert_eq!(run(&["classify", "--expect", "poNFA", "-"], &text).code, 1);
}

#[test]
fn aknn_is_not_universal() {
    let out = run(&["universal", "-"], &aknn(2, 2));
    assert_eq!(out.code, 1);
    assert!(
        out.stdout.contains("counterexample: a1 a1 a2 a1 a2"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("method: antichain"));
}

#[test]
fn brute_force_method_respects_max_len() {
    let out = run(
        &["universal", "--method", "brute", "--max-len", "4", "-"],
        &aknn(2, 2),
    );
    assert_eq!(out.code, 0, "{}", out.stdout);
    let out = run(
        &["universal", "--method", "brute", "--max-len", "5", "-"],
        &aknn(2, 2),
    );
    assert_eq!(out.code, 1);
}

#[test]
fn sponfa_method_refuses_unsaturated_input() {
    let out = run(
        &["universal", "--method", "sponfa", &data("forbidden.nfa")],
        "",
    );
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error:"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        run(&["classify", "-"], "alphabet: a\nstates: p\ninitial: q\n").code,
        2
    );
    assert_eq!(run(&["classify", &data("missing.nfa")], "").code, 2);
    assert_eq!(
        run(&["universal", "--method", "fast", "-"], &aknn(1, 1)).code,
        2
    );
    assert_eq!(run(&["gen-aknn", "--k", "0", "--n", "2"], "").code, 2);
}

#[test]
fn resource_caps_come_from_the_environment() {
    let out = run_env(&["gen-aknn", "--k", "2", "--n", "2"], "", Some("aknn=1"));
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("cap 1"), "{}", out.stderr);
    let out = run_env(&["universal", "-"], &aknn(3, 3), Some("antichain=2"));
    assert_eq!(out.code, 3);
    assert_eq!(
        run_env(
            &["gen-word", "--k", "2", "--n", "2"],
            "",
            Some("nonsense=1")
        )
        .code,
        2
    );
}

#[test]
fn generated_automata_round_trip() {
    for args in [
        vec!["gen-aknn", "--k", "2", "--n", "3"],
        vec!["gen-aknn", "--k", "2", "--n", "3", "--trim"],
        vec!["gen-trim", "--k", "2", "--n", "3"],
        vec!["gen-dag", &data("diamond.dag")],
    ] {
        let out = run(&args.iter().map(|s| s.as_ref()).collect::<Vec<&str>>(), "");
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        let a = parse_nfa(&out.stdout).unwrap();
        assert_eq!(a.to_string(), out.stdout);
    }
    let trimmed = run(&["gen-trim", "--k", "2", "--n", "3"], "").stdout;
    assert_eq!(
        run(&["gen-aknn", "--k", "2", "--n", "3", "--trim"], "").stdout,
        trimmed
    );
    assert!(run(&["classify", "-"], &trimmed)
        .stdout
        .contains("class: rpoNFA"));
}

#[test]
fn gen_word_prints_the_word() {
    let out = run(&["gen-word", "--k", "2", "--n", "2"], "");
    assert_eq!(out.stdout.trim(), "a1 a1 a2 a1 a2");
}

#[test]
fn dag_gadgets_decide_reachability() {
    let reachable = run(&["gen-dag", &data("diamond.dag")], "").stdout;
    assert_eq!(run(&["universal", "-"], &reachable).code, 0);
    let split = run(&["gen-dag", &data("split.dag")], "").stdout;
    let out = run(&["universal", "-"], &split);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("method: unary-pumping"));
}

#[test]
fn reduce_prints_provenance_then_the_automaton() {
    let out = run(
        &[
            "reduce",
            "--tm",
            &data("one_step.tm"),
            "--input",
            "1",
            "--space",
            "1",
        ],
        "",
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out
        .stdout
        .starts_with("# reduction: n = 3, |Pi| = 24, p = 1"));
    assert!(out.stdout.contains("# component transition:"));
    let a = parse_nfa(&out.stdout).unwrap();
    assert_eq!(a.num_letters(), 24);
}

#[test]
fn reduce_verification_agrees_with_the_machine() {
    let out = run(
        &[
            "reduce",
            "--tm",
            &data("one_step.tm"),
            "--input",
            "1",
            "--space",
            "1",
            "--verify",
        ],
        "",
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("verification: full"));
    assert!(out.stdout.contains("machine accepts: yes"));
    assert!(out.stdout.contains("consistent: yes"));
    let out = run(
        &[
            "reduce",
            "--tm",
            &data("looper.tm"),
            "--input",
            "1",
            "--space",
            "1",
            "--verify",
        ],
        "",
    );
    assert!(out.stdout.contains("universal: yes"), "{}", out.stdout);
}

#[test]
fn reduce_rejects_inputs_beyond_the_space_bound() {
    let out = run(
        &[
            "reduce",
            "--tm",
            &data("one_step.tm"),
            "--input",
            "11",
            "--space",
            "1",
        ],
        "",
    );
    assert_eq!(out.code, 2);
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest", "--seed", "7", "--samples", "100"], "");
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("selftest: pass\n"));
}
