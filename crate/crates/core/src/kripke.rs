//! Letters, lasso words, alphabets and (weighted) Kripke structures.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::rational::{in_unit_interval, Rational};
use crate::Error;

/// A total assignment of weights in `[0,1]` to the atoms of the enclosing
/// lasso, alphabet or structure, in the same order as its atom list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub Vec<Rational>);

impl Letter {
    pub fn weight(&self, atom: usize) -> &Rational {
        &self.0[atom]
    }

    pub fn is_boolean(&self) -> bool {
        self.0.iter().all(|w| w.is_zero() || w.is_one())
    }
}

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lasso {
    pub atoms: Vec<String>,
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl Lasso {
    pub fn new(atoms: Vec<String>, prefix: Vec<Letter>, period: Vec<Letter>) -> Result<Self, Error> {
        if period.is_empty() {
            return Err(Error::InvalidWord("lasso period must be nonempty".into()));
        }
        for l in prefix.iter().chain(&period) {
            if l.0.len() != atoms.len() {
                return Err(Error::InvalidWord("letter does not assign every atom".into()));
            }
            if let Some(w) = l.0.iter().find(|w| !in_unit_interval(w)) {
                return Err(Error::InvalidWord(alloc::format!("weight {w} outside [0,1]")));
            }
        }
        Ok(Lasso { atoms, prefix, period })
    }

    /// Builds a Boolean lasso from sets of true atoms.
    pub fn from_sets(atoms: &[&str], prefix: &[&[&str]], period: &[&[&str]]) -> Lasso {
        let letter = |set: &&[&str]| {
            Letter(atoms.iter().map(|a| if set.contains(a) { Rational::one() } else { Rational::zero() }).collect())
        };
        Lasso {
            atoms: atoms.iter().map(|s| String::from(*s)).collect(),
            prefix: prefix.iter().map(letter).collect(),
            period: period.iter().map(letter).collect(),
        }
    }

    /// Number of distinct suffixes an evaluation has to look at.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position class of absolute position `i`.
    pub fn class(&self, i: usize) -> usize {
        let u = self.prefix.len();
        if i < u {
            i
        } else {
            u + (i - u) % self.period.len()
        }
    }

    pub fn next_class(&self, c: usize) -> usize {
        if c + 1 < self.len() {
            c + 1
        } else {
            self.prefix.len()
        }
    }

    pub fn letter(&self, c: usize) -> &Letter {
        if c < self.prefix.len() {
            &self.prefix[c]
        } else {
            &self.period[c - self.prefix.len()]
        }
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn is_boolean(&self) -> bool {
        self.prefix.iter().chain(&self.period).all(Letter::is_boolean)
    }

    /// The word read from position `k` on.
    pub fn suffix(&self, k: usize) -> Lasso {
        let u = self.prefix.len();
        if k < u {
            return Lasso { atoms: self.atoms.clone(), prefix: self.prefix[k..].to_vec(), period: self.period.clone() };
        }
        let r = (k - u) % self.period.len();
        let mut period = self.period[r..].to_vec();
        period.extend_from_slice(&self.period[..r]);
        Lasso { atoms: self.atoms.clone(), prefix: Vec::new(), period }
    }

    /// Canonical representative of the same infinite word: primitive period
    /// and shortest prefix.
    pub fn normalized(&self) -> Lasso {
        let mut period = self.period.clone();
        let n = period.len();
        if let Some(d) = (1..n).find(|d| n.is_multiple_of(*d) && (0..n).all(|i| period[i] == period[i % d])) {
            period.truncate(d);
        }
        let mut prefix = self.prefix.clone();
        while let Some(last) = prefix.last() {
            if *last != period[period.len() - 1] {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Lasso { atoms: self.atoms.clone(), prefix, period }
    }

    /// Same word over another atom order; atoms missing here are an error.
    pub fn reindexed(&self, atoms: &[String]) -> Result<Lasso, Error> {
        let map: Vec<usize> = atoms
            .iter()
            .map(|a| self.atom_index(a).ok_or_else(|| Error::UnknownAtom(a.clone())))
            .collect::<Result<_, _>>()?;
        let conv = |l: &Letter| Letter(map.iter().map(|&i| l.0[i].clone()).collect());
        Ok(Lasso {
            atoms: atoms.to_vec(),
            prefix: self.prefix.iter().map(conv).collect(),
            period: self.period.iter().map(conv).collect(),
        })
    }
}

impl fmt::Display for Lasso {
    /// Text form `u-letters ; v-letters`; letters are comma-separated
    /// `atom=weight` lists, separated from each other by whitespace.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = |f: &mut fmt::Formatter<'_>, l: &Letter| -> fmt::Result {
            if self.atoms.is_empty() {
                return f.write_str("-");
            }
            for (i, (a, w)) in self.atoms.iter().zip(&l.0).enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}={w}")?;
            }
            Ok(())
        };
        for l in &self.prefix {
            letter(f, l)?;
            f.write_str(" ")?;
        }
        f.write_str(";")?;
        for l in &self.period {
            f.write_str(" ")?;
            letter(f, l)?;
        }
        Ok(())
    }
}

/// A finite set of letters over a fixed atom list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    pub atoms: Vec<String>,
    pub letters: Vec<Letter>,
}

impl Alphabet {
    pub fn new(atoms: Vec<String>, letters: impl IntoIterator<Item = Letter>) -> Alphabet {
        let letters: BTreeSet<Letter> = letters.into_iter().collect();
        Alphabet { atoms, letters: letters.into_iter().collect() }
    }

    /// All `2^|atoms|` Boolean letters.
    pub fn boolean(atoms: Vec<String>) -> Alphabet {
        let n = atoms.len();
        let letters = (0..1usize << n).map(|mask| {
            Letter((0..n).map(|i| if mask >> i & 1 == 1 { Rational::one() } else { Rational::zero() }).collect())
        });
        Alphabet::new(atoms, letters)
    }

    pub fn from_lasso(lasso: &Lasso) -> Alphabet {
        Alphabet::new(lasso.atoms.clone(), lasso.prefix.iter().chain(&lasso.period).cloned())
    }

    pub fn index_of(&self, letter: &Letter) -> Option<usize> {
        self.letters.binary_search(letter).ok()
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    pub name: String,
    pub label: Letter,
    pub initial: bool,
}

/// `⟨AP, S, I, ρ, L⟩` with `L(s)(p) ∈ [0,1]`; Boolean structures use only
/// weights 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeStructure {
    pub atoms: Vec<String>,
    pub states: Vec<State>,
    pub successors: Vec<Vec<usize>>,
}

impl KripkeStructure {
    pub fn new(
        atoms: Vec<String>,
        states: Vec<State>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, Error> {
        let mut successors = alloc::vec![BTreeSet::new(); states.len()];
        for (from, to) in edges {
            if from >= states.len() || to >= states.len() {
                return Err(Error::InvalidModel("edge refers to an unknown state".into()));
            }
            successors[from].insert(to);
        }
        for s in &states {
            if s.label.0.len() != atoms.len() {
                return Err(Error::InvalidModel(alloc::format!("state {} does not assign every atom", s.name)));
            }
            if let Some(w) = s.label.0.iter().find(|w| !in_unit_interval(w)) {
                return Err(Error::InvalidModel(alloc::format!("state {} has weight {w} outside [0,1]", s.name)));
            }
        }
        if let Some(i) = successors.iter().position(BTreeSet::is_empty) {
            return Err(Error::InvalidModel(alloc::format!("state {} has no successor", states[i].name)));
        }
        if !states.iter().any(|s| s.initial) {
            return Err(Error::InvalidModel("no initial state".into()));
        }
        Ok(KripkeStructure {
            atoms,
            states,
            successors: successors.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn initial(&self) -> impl Iterator<Item = usize> + '_ {
        self.states.iter().enumerate().filter(|(_, s)| s.initial).map(|(i, _)| i)
    }

    pub fn label(&self, s: usize) -> &Letter {
        &self.states[s].label
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// The letters occurring as state labels.
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.atoms.clone(), self.states.iter().map(|s| s.label.clone()))
    }

    pub fn is_boolean(&self) -> bool {
        self.states.iter().all(|s| s.label.is_boolean())
    }

    /// Whether some infinite path of the structure reads `lasso`.
    pub fn realizes(&self, lasso: &Lasso) -> bool {
        let Ok(lasso) = lasso.reindexed(&self.atoms) else {
            return false;
        };
        // Product of lasso position classes with states, restricted to
        // matching labels; an infinite path exists iff the reachable part
        // contains a cycle.
        let matches = |c: usize, s: usize| lasso.letter(c) == self.label(s);
        let mut reach = BTreeSet::new();
        let mut stack: Vec<(usize, usize)> = self.initial().filter(|&s| matches(0, s)).map(|s| (0, s)).collect();
        while let Some((c, s)) = stack.pop() {
            if !reach.insert((c, s)) {
                continue;
            }
            let nc = lasso.next_class(c);
            stack.extend(self.successors[s].iter().filter(|&&t| matches(nc, t)).map(|&t| (nc, t)));
        }
        let mut alive = reach;
        loop {
            let dead: Vec<_> = alive
                .iter()
                .filter(|&&(c, s)| {
                    let nc = lasso.next_class(c);
                    !self.successors[s].iter().any(|&t| alive.contains(&(nc, t)))
                })
                .cloned()
                .collect();
            if dead.is_empty() {
                return !alive.is_empty();
            }
            for d in dead {
                alive.remove(&d);
            }
        }
    }
}

/// Every lasso word read along a path of `k` with a prefix of at most
/// `max_prefix` states followed by a simple-or-not cycle of at most
/// `max_period` states. Words are deduplicated on their normalized form.
pub fn enumerate_lassos(k: &KripkeStructure, max_prefix: usize, max_period: usize) -> Vec<Lasso> {
    let mut out: BTreeMap<Lasso, ()> = BTreeMap::new();
    let mut prefix: Vec<usize> = Vec::new();
    let initial: Vec<usize> = k.initial().collect();
    enumerate_prefixes(k, &initial, &mut prefix, max_prefix, max_period, &mut out);
    out.into_keys().collect()
}

fn enumerate_prefixes(
    k: &KripkeStructure,
    candidates: &[usize],
    prefix: &mut Vec<usize>,
    max_prefix: usize,
    max_period: usize,
    out: &mut BTreeMap<Lasso, ()>,
) {
    for &start in candidates {
        let mut cycle = alloc::vec![start];
        enumerate_cycles(k, prefix, &mut cycle, max_period, out);
    }
    if prefix.len() < max_prefix {
        for &s in candidates {
            prefix.push(s);
            let next = k.successors[s].clone();
            enumerate_prefixes(k, &next, prefix, max_prefix, max_period, out);
            prefix.pop();
        }
    }
}

fn enumerate_cycles(
    k: &KripkeStructure,
    prefix: &[usize],
    cycle: &mut Vec<usize>,
    max_period: usize,
    out: &mut BTreeMap<Lasso, ()>,
) {
    let last = *cycle.last().expect("cycle is never empty");
    if k.successors[last].contains(&cycle[0]) {
        let word = Lasso {
            atoms: k.atoms.clone(),
            prefix: prefix.iter().map(|&s| k.label(s).clone()).collect(),
            period: cycle.iter().map(|&s| k.label(s).clone()).collect(),
        };
        out.insert(word.normalized(), ());
    }
    if cycle.len() < max_period {
        for &t in &k.successors[last] {
            cycle.push(t);
            enumerate_cycles(k, prefix, cycle, max_period, out);
            cycle.pop();
        }
    }
}
