//! The `dltl` binary: outputs, exit codes and determinism.

use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn dltl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dltl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find_map(|l| l.strip_prefix(key)).unwrap_or_else(|| panic!("no `{key}` in {text}"))
}

#[test]
fn check_holds_on_single_state() {
    let o = dltl(&["check", &fixture("single.kripke"), "p", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "HOLDS\n");
}

#[test]
fn check_violation_is_self_verifying() {
    for v in ["1/16", "1/2", "1"] {
        let o = dltl(&["check", &fixture("two_branch.kripke"), "F{exp(1/2)} b", v]);
        assert_eq!(o.status.code(), Some(1));
        let out = stdout(&o);
        assert!(out.starts_with("VIOLATED\n"));
        let value = line(&out, "value: ");
        let again = dltl(&["eval", line(&out, "counterexample: "), "F{exp(1/2)} b"]);
        assert_eq!(stdout(&again).trim(), value);
    }
}

#[test]
fn formula_from_file() {
    let arg = format!("@{}", fixture("eventually_b.dltl"));
    let o = dltl(&["check", &fixture("chain.kripke"), &arg, "1/2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn eval_counts_leading_letters() {
    let o = dltl(&["eval", "a=1 a=1 a=1 ; a=0", "a U{exp(1/2)} !a"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "1/8\n".to_string()));
    let o = dltl(&["eval", "; p=0", "true O{exp(1/2), 1/2} p"]);
    assert_eq!(stdout(&o), "1/2\n");
}

#[test]
fn sat_and_unsat() {
    let o = dltl(&["sat", "F{exp(1/2)} p", "1/4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let again = dltl(&["eval", line(&out, "witness: "), "F{exp(1/2)} p"]);
    assert_eq!(stdout(&again).trim(), line(&out, "value: "));
    let o = dltl(&["sat", "scale{1/2} F p", "1/2"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "UNSAT\n".to_string()));
    let o = dltl(&["sat", "p | r", "0", "--atoms", "p,q,r"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn value_brackets() {
    let o = dltl(&["value", &fixture("chain.kripke"), "F{exp(1/2)} b", "1/32"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "[1/2, 17/32]\n".to_string()));
}

#[test]
fn translate_is_byte_stable() {
    let args = ["translate", "(p U{recip} q) | G{exp(3/4)} p", "1/3", "--nba", "--graph"];
    let (a, b) = (dltl(&args), dltl(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.starts_with("awa states="));
    assert!(out.contains("\nnba states=") && out.contains("digraph awa {") && out.contains("digraph nba {"));
    let below = stdout(&dltl(&["translate", "p U q", "1/2", "--below"]));
    assert!(below.lines().nth(1).unwrap().contains(" accepting "), "{below}");
}

#[test]
fn input_errors_exit_two() {
    let cases: [&[&str]; 8] = [
        &["check", "/nonexistent/model", "p", "1"],
        &["check", &fixture("single.kripke"), "p U", "1"],
        &["check", &fixture("single.kripke"), "p", "3/2"],
        &["check", &fixture("single.kripke"), "q", "1"],
        &["eval", "p=1", "p"],
        &["value", &fixture("chain.kripke"), "b", "0"],
        &["frobnicate"],
        &["check"],
    ];
    for args in cases {
        let o = dltl(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_succeeds() {
    assert_eq!(dltl(&["--help"]).status.code(), Some(0));
}
