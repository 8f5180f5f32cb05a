//! Deterministic text listings and DOT exports of the automata. States are
//! listed in id order and letters in alphabet order, so the output depends on
//! the input only.

use std::collections::BTreeMap;
use std::fmt::Write;

use dltl_core::awa::AwaState;
use dltl_core::{Awa, Nba};

use crate::format::format_letter;

fn letter_names(awa: &Awa) -> Vec<String> {
    let alphabet = awa.alphabet();
    alphabet.letters.iter().map(|l| format_letter(&alphabet.atoms, l)).collect()
}

fn kind(awa: &Awa, q: usize) -> &'static str {
    match awa.state(q) {
        AwaState::Assert { .. } => "assert",
        AwaState::Bool { .. } => "bool",
    }
}

fn acceptance(accepting: bool) -> &'static str {
    if accepting {
        "accepting"
    } else {
        "rejecting"
    }
}

/// One line per state: id, kind, acceptance, description, then the
/// transition on every letter.
pub fn awa_text(awa: &Awa) -> String {
    let names = letter_names(awa);
    let mut out = String::new();
    writeln!(out, "awa states={} initial=q{} letters={}", awa.len(), awa.initial(), names.len()).unwrap();
    for q in 0..awa.len() {
        write!(out, "q{q} {} {} {}", kind(awa, q), acceptance(awa.is_accepting(q)), awa.describe(q)).unwrap();
        for (l, name) in names.iter().enumerate() {
            write!(out, " | {name}: {}", awa.delta(q, l)).unwrap();
        }
        out.push('\n');
    }
    out
}

fn set(xs: &std::collections::BTreeSet<usize>) -> String {
    let items: Vec<String> = xs.iter().map(|q| format!("q{q}")).collect();
    format!("{{{}}}", items.join(","))
}

/// One line per reachable state: id, acceptance, the AWA state sets `S` and
/// `O`, then the successors on every letter.
pub fn nba_text(nba: &mut Nba) -> String {
    nba.materialize();
    let names = letter_names(nba.awa());
    let mut out = String::new();
    writeln!(out, "nba states={} initial=n{} letters={}", nba.len(), nba.initial(), names.len()).unwrap();
    for q in 0..nba.len() {
        let st = nba.state(q).clone();
        write!(out, "n{q} {} S={} O={}", acceptance(nba.is_accepting(q)), set(&st.s), set(&st.o)).unwrap();
        for (l, name) in names.iter().enumerate() {
            let targets: Vec<String> = nba.successors(q, l).iter().map(|t| format!("n{t}")).collect();
            let targets = if targets.is_empty() { "-".to_string() } else { targets.join(",") };
            write!(out, " | {name}: {targets}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Edges grouped by target; letters leading to the same target share one edge.
fn edges(out: &mut String, from: &str, by_target: BTreeMap<String, Vec<&str>>) {
    for (to, letters) in by_target {
        writeln!(out, "  {from} -> {to} [label={}];", quote(&letters.join("\\n"))).unwrap();
    }
}

/// Graph of the AWA: one edge per (state, letter, state in the transition).
pub fn awa_dot(awa: &Awa) -> String {
    let names = letter_names(awa);
    let mut out = String::from("digraph awa {\n  rankdir=LR;\n  start [shape=point];\n");
    writeln!(out, "  start -> q{};", awa.initial()).unwrap();
    for q in 0..awa.len() {
        let shape = if awa.is_accepting(q) { "doublecircle" } else { "circle" };
        writeln!(out, "  q{q} [shape={shape}, label={}];", quote(&format!("q{q}\\n{}", awa.describe(q)))).unwrap();
    }
    for q in 0..awa.len() {
        let mut by_target: BTreeMap<String, Vec<&str>> = BTreeMap::new();
        for (l, name) in names.iter().enumerate() {
            for t in awa.delta(q, l).states() {
                by_target.entry(format!("q{t}")).or_default().push(name);
            }
        }
        edges(&mut out, &format!("q{q}"), by_target);
    }
    out.push_str("}\n");
    out
}

pub fn nba_dot(nba: &mut Nba) -> String {
    nba.materialize();
    let names = letter_names(nba.awa());
    let mut out = String::from("digraph nba {\n  rankdir=LR;\n  start [shape=point];\n");
    writeln!(out, "  start -> n{};", nba.initial()).unwrap();
    for q in 0..nba.len() {
        let shape = if nba.is_accepting(q) { "doublecircle" } else { "circle" };
        let st = nba.state(q).clone();
        let label = format!("n{q}\\nS={}\\nO={}", set(&st.s), set(&st.o));
        writeln!(out, "  n{q} [shape={shape}, label={}];", quote(&label)).unwrap();
    }
    for q in 0..nba.len() {
        let mut by_target: BTreeMap<String, Vec<&str>> = BTreeMap::new();
        for (l, name) in names.iter().enumerate() {
            for &t in nba.successors(q, l) {
                by_target.entry(format!("n{t}")).or_default().push(name);
            }
        }
        edges(&mut out, &format!("n{q}"), by_target);
    }
    out.push_str("}\n");
    out
}
