//! Threshold model checking, threshold satisfiability and value
//! approximation. Every lasso returned is re-evaluated with the exact oracle
//! before it is handed out; a disagreement is reported as an internal error.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Signed, Zero};

use crate::awa::{build_awa, BuildOptions, Cmp};
use crate::formula::Formula;
use crate::kripke::{Alphabet, KripkeStructure, Lasso};
use crate::nba::Nba;
use crate::ndfs::{find_accepting_cycle, LassoPath, PairEdges};
use crate::oracle::eval_lasso;
use crate::rational::{in_unit_interval, Rational};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckVerdict {
    Holds,
    /// A computation of the structure whose value is below the threshold.
    Violated {
        counterexample: Lasso,
        value: Rational,
    },
}

impl CheckVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CheckVerdict::Holds)
    }
}

fn to_lasso(alphabet: &Alphabet, path: LassoPath<usize>) -> Lasso {
    let letters = |xs: Vec<usize>| xs.into_iter().map(|l| alphabet.letters[l].clone()).collect();
    Lasso { atoms: alphabet.atoms.clone(), prefix: letters(path.stem), period: letters(path.cycle) }.normalized()
}

/// Some lasso accepted by `nba`, or `None` if its language is empty.
pub fn find_accepting_lasso(nba: &mut Nba) -> Option<Lasso> {
    let alphabet = nba.awa().alphabet().clone();
    nba.find_accepting_lasso().map(|p| to_lasso(&alphabet, p))
}

fn check_threshold(v: &Rational) -> Result<(), Error> {
    if in_unit_interval(v) {
        Ok(())
    } else {
        Err(Error::ThresholdOutOfRange(v.to_string()))
    }
}

/// Decides `[[K, φ]] ≥ v`, i.e. whether every computation of `K` has value
/// at least `v`.
pub fn check_at_least(k: &KripkeStructure, f: &Formula, v: &Rational) -> Result<CheckVerdict, Error> {
    check_threshold(v)?;
    let alphabet = k.alphabet();
    let negated = Formula::not(f.clone());
    let awa = build_awa(&negated, Cmp::Gt, &(Rational::one() - v), &alphabet, BuildOptions::default())?;
    let nba = RefCell::new(Nba::new(awa, true)?);
    let label: Vec<usize> =
        (0..k.states.len()).map(|s| alphabet.index_of(k.label(s)).expect("labels form the alphabet")).collect();
    // Product node (q, s): the automaton is in q and is about to read L(s).
    let succ = |&(q, s): &(usize, usize)| -> PairEdges<usize> {
        let mut nba = nba.borrow_mut();
        let targets = nba.successors(q, label[s]).to_vec();
        let l = label[s];
        Ok(targets.iter().flat_map(|&t| k.successors[s].iter().map(move |&s2| (l, (t, s2)))).collect())
    };
    let acc = |&(q, _): &(usize, usize)| nba.borrow().is_accepting(q);
    let init: Vec<(usize, usize)> = k.initial().map(|s| (0, s)).collect();
    let found = match find_accepting_cycle(init, succ, acc) {
        Ok(found) => found,
        Err(never) => match never {},
    };
    let Some(path) = found else {
        return Ok(CheckVerdict::Holds);
    };
    let lasso = to_lasso(&alphabet, path);
    let value = eval_lasso(f, &lasso)?;
    if value >= *v || !k.realizes(&lasso) {
        return Err(Error::Internal(alloc::format!(
            "counterexample {lasso} has value {value}, expected a computation below {v}"
        )));
    }
    Ok(CheckVerdict::Violated { counterexample: lasso, value })
}

/// A lasso over `alphabet` with value above `v`, or `None` if no
/// computation exceeds `v`.
pub fn satisfiable_above(f: &Formula, v: &Rational, alphabet: &Alphabet) -> Result<Option<(Lasso, Rational)>, Error> {
    check_threshold(v)?;
    let awa = build_awa(f, Cmp::Gt, v, alphabet, BuildOptions::default())?;
    let mut nba = Nba::new(awa, true)?;
    let Some(lasso) = find_accepting_lasso(&mut nba) else {
        return Ok(None);
    };
    let value = eval_lasso(f, &lasso)?;
    if value <= *v {
        return Err(Error::Internal(alloc::format!("witness {lasso} has value {value}, expected above {v}")));
    }
    Ok(Some((lasso, value)))
}

/// An interval `[lo, hi]` with `hi - lo ≤ ε` containing `[[K, φ]]`. The
/// check at `lo` holds, and the one at `hi` fails unless `hi = 1`.
pub fn approximate_value(k: &KripkeStructure, f: &Formula, epsilon: &Rational) -> Result<(Rational, Rational), Error> {
    if !epsilon.is_positive() {
        return Err(Error::ThresholdOutOfRange(epsilon.to_string()));
    }
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    if check_at_least(k, f, &hi)?.holds() {
        return Ok((hi.clone(), hi));
    }
    while &hi - &lo > *epsilon {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        if check_at_least(k, f, &mid)?.holds() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}
