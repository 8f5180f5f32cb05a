//! Line-oriented Kripke structure files and the lasso word syntax.
//!
//! ```text
//! # comment
//! aps: p q
//! state: s0 init p=1 q=0
//! state: s1 p=1/2 q=1
//! trans: s0 s1
//! trans: s1 s1
//! ```
//!
//! A lasso is written `u-letters ; v-letters`. A letter is a comma-separated
//! list of `atom=weight` pairs and letters are separated by whitespace, as in
//! `p=1,q=0 ; p=0,q=1 p=1,q=1`. Whitespace around commas is allowed; a pair
//! whose atom already occurs in the current letter starts the next letter, so
//! `p=1 ; p=0 , p=1` has a period of two letters. `-` is the letter over no
//! atoms.

use std::collections::BTreeMap;

use dltl_core::kripke::State;
use dltl_core::rational::parse_rational;
use dltl_core::{KripkeStructure, Lasso, Letter, Rational};

use crate::InputError;

fn syntax(line: usize, message: impl Into<String>) -> InputError {
    InputError::Syntax { line, message: message.into() }
}

fn weight(text: &str, line: usize) -> Result<Rational, InputError> {
    parse_rational(text).ok_or_else(|| syntax(line, format!("`{text}` is not a rational weight")))
}

fn assignment(pair: &str, line: usize) -> Result<(&str, Rational), InputError> {
    let (atom, w) =
        pair.split_once('=').ok_or_else(|| syntax(line, format!("expected atom=weight, found `{pair}`")))?;
    if atom.is_empty() {
        return Err(syntax(line, format!("missing atom name in `{pair}`")));
    }
    Ok((atom, weight(w, line)?))
}

/// Parses a Kripke structure file.
pub fn parse_kripke(text: &str) -> Result<KripkeStructure, InputError> {
    let mut atoms: Option<Vec<String>> = None;
    let mut states: Vec<State> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges: Vec<(String, String, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) =
            content.split_once(':').ok_or_else(|| syntax(line, "expected `aps:`, `state:` or `trans:`"))?;
        let mut words = rest.split_whitespace();
        match key.trim() {
            "aps" => {
                if atoms.is_some() {
                    return Err(syntax(line, "duplicate `aps:` line"));
                }
                let list: Vec<String> = words.map(String::from).collect();
                let mut sorted = list.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != list.len() {
                    return Err(syntax(line, "duplicate atom"));
                }
                atoms = Some(list);
            }
            "state" => {
                let atoms = atoms.as_ref().ok_or_else(|| syntax(line, "`state:` before `aps:`"))?;
                let name = words.next().ok_or_else(|| syntax(line, "missing state name"))?;
                if index.contains_key(name) {
                    return Err(syntax(line, format!("duplicate state `{name}`")));
                }
                let mut initial = false;
                let mut label: Vec<Option<Rational>> = vec![None; atoms.len()];
                for w in words {
                    if w == "init" {
                        initial = true;
                        continue;
                    }
                    let (atom, value) = assignment(w, line)?;
                    let k = atoms
                        .iter()
                        .position(|a| a == atom)
                        .ok_or_else(|| syntax(line, format!("atom `{atom}` is not declared")))?;
                    if label[k].replace(value).is_some() {
                        return Err(syntax(line, format!("atom `{atom}` assigned twice")));
                    }
                }
                let label = label
                    .into_iter()
                    .zip(atoms)
                    .map(|(w, a)| w.ok_or_else(|| syntax(line, format!("state `{name}` does not assign atom `{a}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                index.insert(name.to_string(), states.len());
                states.push(State { name: name.to_string(), label: Letter(label), initial });
            }
            "trans" => {
                let from = words.next().ok_or_else(|| syntax(line, "missing source state"))?;
                let mut any = false;
                for to in words {
                    edges.push((from.to_string(), to.to_string(), line));
                    any = true;
                }
                if !any {
                    return Err(syntax(line, "missing target state"));
                }
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    let atoms = atoms.ok_or_else(|| syntax(1, "missing `aps:` line"))?;
    let lookup = |name: &str, line: usize| {
        index.get(name).copied().ok_or_else(|| syntax(line, format!("unknown state `{name}`")))
    };
    let edges = edges
        .iter()
        .map(|(a, b, line)| Ok((lookup(a, *line)?, lookup(b, *line)?)))
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok(KripkeStructure::new(atoms, states, edges)?)
}

/// Reads and parses a Kripke structure file.
pub fn load_kripke(path: &str) -> Result<KripkeStructure, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_string(), source })?;
    parse_kripke(&text)
}

type RawLetter = Vec<(String, Rational)>;

fn letters(side: &str) -> Result<Vec<RawLetter>, InputError> {
    let glued = side.split(',').map(str::trim).collect::<Vec<_>>().join(",");
    let mut out: Vec<RawLetter> = Vec::new();
    for group in glued.split_whitespace() {
        if group == "-" {
            out.push(Vec::new());
            continue;
        }
        let mut current: RawLetter = Vec::new();
        for pair in group.split(',') {
            let (atom, w) = assignment(pair, 1)?;
            if current.iter().any(|(a, _)| a == atom) {
                out.push(std::mem::take(&mut current));
            }
            current.push((atom.to_string(), w));
        }
        out.push(current);
    }
    Ok(out)
}

/// Parses `u-letters ; v-letters`. Atoms are ordered by first occurrence and
/// every letter must assign all of them.
pub fn parse_lasso(text: &str) -> Result<Lasso, InputError> {
    let (u, v) = text.split_once(';').ok_or_else(|| syntax(1, "expected `prefix ; period`"))?;
    if v.contains(';') {
        return Err(syntax(1, "more than one `;`"));
    }
    let (u, v) = (letters(u)?, letters(v)?);
    let mut atoms: Vec<String> = Vec::new();
    for (a, _) in u.iter().chain(&v).flatten() {
        if !atoms.contains(a) {
            atoms.push(a.clone());
        }
    }
    let convert = |raw: Vec<RawLetter>| -> Result<Vec<Letter>, InputError> {
        raw.into_iter()
            .map(|l| {
                let ws = atoms
                    .iter()
                    .map(|a| {
                        l.iter()
                            .find(|(b, _)| b == a)
                            .map(|(_, w)| w.clone())
                            .ok_or_else(|| syntax(1, format!("a letter does not assign atom `{a}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Letter(ws))
            })
            .collect()
    };
    let (prefix, period) = (convert(u)?, convert(v)?);
    Ok(Lasso::new(atoms, prefix, period)?)
}

/// `atom=weight` pairs joined by commas, or `-` without atoms.
pub fn format_letter(atoms: &[String], letter: &Letter) -> String {
    if atoms.is_empty() {
        return "-".into();
    }
    atoms.iter().zip(&letter.0).map(|(a, w)| format!("{a}={w}")).collect::<Vec<_>>().join(",")
}
