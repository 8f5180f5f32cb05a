//! Alternation removal by the breakpoint construction over minimal
//! assertion sets.
//!
//! An NBA state is a pair `(S, O)` with `O ⊆ S`: `S` is a set of AWA states
//! that must all accept the rest of the word and `O` holds the rejecting
//! states still owing a visit to the breakpoint. A state is accepting when
//! `O` is empty. With pruning enabled every `S` is reduced to its
//! non-dominated members, and a dominating rejecting state inherits the
//! obligation of the states it replaces.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::awa::{check_weakness, Awa, AwaState, BoolPlus, Cmp};
use crate::formula::Node;
use crate::kripke::Lasso;
use crate::ndfs::{find_accepting_cycle, LassoPath, PairEdges};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NbaState {
    pub s: BTreeSet<usize>,
    pub o: BTreeSet<usize>,
}

/// Whether acceptance from AWA state `a` implies acceptance from `b`, for
/// `a ≠ b`.
///
/// Assertions about the same subformula are ordered by threshold. Shifted
/// discounted untils are also ordered by shift, since `η^{+i} ≥ η^{+j}`
/// pointwise for `i ≤ j` and the value of `U_η` is monotone in `η`. The
/// tending operator is not monotone in its discount, so its shifts must agree.
pub fn dominates(awa: &Awa, a: &AwaState, b: &AwaState) -> bool {
    let (
        AwaState::Assert { node: n1, shift: i, cmp: c1, threshold: t1 },
        AwaState::Assert { node: n2, shift: j, cmp: c2, threshold: t2 },
    ) = (a, b)
    else {
        return false;
    };
    if n1 != n2 || c1 != c2 || a == b {
        return false;
    }
    let shifts_ok = match awa.node(*n1) {
        Node::DiscUntil(..) => match c1 {
            Cmp::Lt => i <= j,
            Cmp::Gt => i >= j,
        },
        _ => i == j,
    };
    shifts_ok
        && match c1 {
            Cmp::Lt => t1 <= t2,
            Cmp::Gt => t1 >= t2,
        }
}

/// Removes every member dominated by another member. Returns the kept set
/// and, for each removed state, a kept state dominating it.
pub fn minimize_assertion_set(awa: &Awa, set: &BTreeSet<usize>) -> (BTreeSet<usize>, BTreeMap<usize, usize>) {
    let mut kept = BTreeSet::new();
    let mut removed = BTreeMap::new();
    for &x in set {
        let by = set.iter().find(|&&y| dominates(awa, awa.state(y), awa.state(x)));
        match by {
            Some(&y) => {
                removed.insert(x, y);
            }
            None => {
                kept.insert(x);
            }
        }
    }
    // Domination is a strict partial order, so follow chains to a kept state.
    let resolved = removed
        .keys()
        .map(|&x| {
            let mut y = removed[&x];
            while let Some(&z) = removed.get(&y) {
                y = z;
            }
            (x, y)
        })
        .collect();
    (kept, resolved)
}

/// A lazily expanded Büchi automaton.
#[derive(Debug, Clone)]
pub struct Nba {
    awa: Awa,
    prune: bool,
    states: Vec<NbaState>,
    index: BTreeMap<NbaState, usize>,
    edges: Vec<Option<Vec<Vec<usize>>>>,
}

impl Nba {
    /// Prepares the construction; states are expanded on demand.
    pub fn new(awa: Awa, prune: bool) -> Result<Nba, Error> {
        check_weakness(&awa)?;
        let mut nba = Nba { awa, prune, states: Vec::new(), index: BTreeMap::new(), edges: Vec::new() };
        let q0 = nba.awa.initial();
        let init = BTreeSet::from([q0]);
        let o = nba.rejecting(&init);
        nba.intern(NbaState { s: init, o });
        Ok(nba)
    }

    pub fn awa(&self) -> &Awa {
        &self.awa
    }

    pub fn initial(&self) -> usize {
        0
    }

    /// States discovered so far.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, q: usize) -> &NbaState {
        &self.states[q]
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.states[q].o.is_empty()
    }

    pub fn alphabet_len(&self) -> usize {
        self.awa.alphabet().len()
    }

    fn rejecting(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().copied().filter(|&q| !self.awa.is_accepting(q)).collect()
    }

    fn intern(&mut self, st: NbaState) -> usize {
        if let Some(&id) = self.index.get(&st) {
            return id;
        }
        let id = self.states.len();
        self.states.push(st.clone());
        self.index.insert(st, id);
        self.edges.push(None);
        id
    }

    /// Successors of `q` on the letter with index `letter`.
    pub fn successors(&mut self, q: usize, letter: usize) -> &[usize] {
        if self.edges[q].is_none() {
            let rows: Vec<Vec<usize>> = (0..self.alphabet_len())
                .map(|l| {
                    let targets = self.expand(q, l);
                    targets.into_iter().map(|t| self.intern(t)).collect()
                })
                .collect();
            self.edges[q] = Some(rows);
        }
        &self.edges[q].as_ref().expect("expanded")[letter]
    }

    fn conj(&self, set: &BTreeSet<usize>, letter: usize) -> BoolPlus {
        BoolPlus::and(set.iter().map(|&q| self.awa.delta(q, letter).clone()))
    }

    fn expand(&self, q: usize, letter: usize) -> Vec<NbaState> {
        let NbaState { s, o } = &self.states[q];
        let mut out = BTreeSet::new();
        if o.is_empty() {
            for model in self.conj(s, letter).cubes() {
                let obligations = self.rejecting(&model);
                out.insert(self.finish(model, obligations));
            }
        } else {
            let rest: BTreeSet<usize> = s.difference(o).copied().collect();
            let xs = self.conj(&rest, letter).cubes();
            let ys = self.conj(o, letter).cubes();
            for y in &ys {
                for x in &xs {
                    let model: BTreeSet<usize> = x.union(y).copied().collect();
                    let obligations = self.rejecting(y);
                    out.insert(self.finish(model, obligations));
                }
            }
        }
        out.into_iter().collect()
    }

    fn finish(&self, s: BTreeSet<usize>, o: BTreeSet<usize>) -> NbaState {
        if !self.prune {
            return NbaState { s, o };
        }
        let (kept, removed) = minimize_assertion_set(&self.awa, &s);
        let inherited = o.iter().map(|q| removed.get(q).copied().unwrap_or(*q));
        let o = inherited.filter(|q| !self.awa.is_accepting(*q)).collect();
        NbaState { s: kept, o }
    }

    /// Expands every reachable state.
    pub fn materialize(&mut self) {
        let mut q = 0;
        while q < self.states.len() {
            for l in 0..self.alphabet_len() {
                self.successors(q, l);
            }
            q += 1;
        }
    }

    /// Some accepted lasso, as letter indices, or `None` if the language is
    /// empty.
    pub fn find_accepting_lasso(&mut self) -> Option<LassoPath<usize>> {
        let letters = self.alphabet_len();
        let this = core::cell::RefCell::new(self);
        let succ = |q: &usize| -> Result<Vec<(usize, usize)>, core::convert::Infallible> {
            let mut nba = this.borrow_mut();
            Ok((0..letters)
                .flat_map(|l| nba.successors(*q, l).iter().map(move |&t| (l, t)).collect::<Vec<_>>())
                .collect())
        };
        let acc = |q: &usize| this.borrow().is_accepting(*q);
        match find_accepting_cycle([0usize], succ, acc) {
            Ok(found) => found,
            Err(never) => match never {},
        }
    }
}

/// Builds the NBA and expands it completely.
pub fn awa_to_nba(awa: Awa, prune: bool) -> Result<Nba, Error> {
    let mut nba = Nba::new(awa, prune)?;
    nba.materialize();
    Ok(nba)
}

/// Whether `lasso` is accepted, via the product of its position graph with
/// the automaton.
pub fn nba_membership(nba: &mut Nba, lasso: &Lasso) -> Result<bool, Error> {
    let alphabet = nba.awa().alphabet().clone();
    let lasso = lasso.reindexed(&alphabet.atoms)?;
    let letters: Vec<usize> = (0..lasso.len())
        .map(|c| alphabet.index_of(lasso.letter(c)).ok_or(Error::LetterNotInAlphabet))
        .collect::<Result<_, _>>()?;
    let this = core::cell::RefCell::new(nba);
    let succ = |&(c, q): &(usize, usize)| -> PairEdges<()> {
        let mut nba = this.borrow_mut();
        let next = lasso.next_class(c);
        Ok(nba.successors(q, letters[c]).iter().map(|&t| ((), (next, t))).collect())
    };
    let acc = |&(_, q): &(usize, usize)| this.borrow().is_accepting(q);
    match find_accepting_cycle([(0usize, 0usize)], succ, acc) {
        Ok(found) => Ok(found.is_some()),
        Err(never) => match never {},
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::awa::{build_awa, BuildOptions};
    use crate::kripke::Alphabet;
    use crate::parse::parse_formula;
    use crate::rational::{rat, Rational};
    use alloc::string::String;

    fn nba(f: &str, v: Rational, prune: bool) -> Nba {
        let alphabet = Alphabet::boolean(alloc::vec![String::from("p")]);
        let awa = build_awa(&parse_formula(f).unwrap(), Cmp::Gt, &v, &alphabet, BuildOptions::default()).unwrap();
        awa_to_nba(awa, prune).unwrap()
    }

    fn p_lasso(prefix: &[bool], period: &[bool]) -> Lasso {
        let set = |b: &bool| -> &[&str] {
            if *b {
                &["p"]
            } else {
                &[]
            }
        };
        let pre: Vec<&[&str]> = prefix.iter().map(set).collect();
        let per: Vec<&[&str]> = period.iter().map(set).collect();
        Lasso::from_sets(&["p"], &pre, &per)
    }

    #[test]
    fn atom_positive() {
        let mut n = nba("p", rat(0, 1), true);
        assert!(nba_membership(&mut n, &p_lasso(&[true], &[false])).unwrap());
        assert!(!nba_membership(&mut n, &p_lasso(&[false], &[true])).unwrap());
        let w = n.find_accepting_lasso().unwrap();
        assert!(!w.cycle.is_empty());
    }

    #[test]
    fn false_is_empty() {
        let mut n = nba("false", rat(0, 1), true);
        assert!(n.find_accepting_lasso().is_none());
    }

    #[test]
    fn discounted_eventually_membership() {
        let mut n = nba("F{exp(1/2)} p", rat(1, 2), true);
        assert!(nba_membership(&mut n, &p_lasso(&[], &[true])).unwrap());
        assert!(!nba_membership(&mut n, &p_lasso(&[], &[false])).unwrap());
        assert!(!nba_membership(&mut n, &p_lasso(&[false], &[true])).unwrap());
    }

    #[test]
    fn state_count_bound() {
        let n = nba("F{exp(1/2)} p", rat(1, 8), true);
        let q = n.awa().len();
        assert_eq!(q, 3);
        assert!(n.len() <= (q + 1) * (q + 1));
        for i in 0..n.len() {
            assert!(n.state(i).o.is_subset(&n.state(i).s));
        }
    }

    #[test]
    fn domination_rules() {
        let alphabet = Alphabet::boolean(alloc::vec![String::from("p")]);
        let awa =
            build_awa(&parse_formula("p").unwrap(), Cmp::Gt, &rat(0, 1), &alphabet, BuildOptions::default()).unwrap();
        let st = |cmp, t: Rational, shift| AwaState::Assert { node: 0, shift, cmp, threshold: t };
        assert!(dominates(&awa, &st(Cmp::Lt, rat(1, 4), 0), &st(Cmp::Lt, rat(1, 2), 0)));
        assert!(!dominates(&awa, &st(Cmp::Lt, rat(1, 2), 0), &st(Cmp::Lt, rat(1, 4), 0)));
        assert!(dominates(&awa, &st(Cmp::Gt, rat(1, 2), 0), &st(Cmp::Gt, rat(1, 4), 0)));
        assert!(!dominates(&awa, &st(Cmp::Lt, rat(1, 4), 0), &st(Cmp::Gt, rat(1, 4), 0)));
        let other = AwaState::Assert { node: 1, shift: 0, cmp: Cmp::Lt, threshold: rat(1, 4) };
        assert!(!dominates(&awa, &st(Cmp::Lt, rat(1, 4), 0), &other));
    }

    #[test]
    fn shifted_discounts_dominate() {
        let alphabet = Alphabet::boolean(alloc::vec![String::from("p")]);
        let f = parse_formula("p U{recip} p").unwrap();
        let awa = build_awa(&f, Cmp::Gt, &rat(0, 1), &alphabet, BuildOptions::default()).unwrap();
        let root = match awa.state(0) {
            AwaState::Assert { node, .. } => *node,
            _ => unreachable!(),
        };
        let st = |cmp, shift| AwaState::Assert { node: root, shift, cmp, threshold: rat(1, 4) };
        assert!(dominates(&awa, &st(Cmp::Lt, 1), &st(Cmp::Lt, 3)));
        assert!(!dominates(&awa, &st(Cmp::Lt, 3), &st(Cmp::Lt, 1)));
        assert!(dominates(&awa, &st(Cmp::Gt, 3), &st(Cmp::Gt, 1)));
    }

    #[test]
    fn minimize_examples() {
        let alphabet = Alphabet::boolean(alloc::vec![String::from("p")]);
        // Both `X p` and `X !p` at several thresholds; their successor
        // states give assertions on `p` with different thresholds.
        let f = parse_formula("X (p | !p)").unwrap();
        let awa = build_awa(&f, Cmp::Gt, &rat(1, 4), &alphabet, BuildOptions::default()).unwrap();
        let (kept, removed) = minimize_assertion_set(&awa, &BTreeSet::new());
        assert!(kept.is_empty() && removed.is_empty());
        let all: BTreeSet<usize> = (0..awa.len()).collect();
        let (kept, _) = minimize_assertion_set(&awa, &all);
        assert_eq!(minimize_assertion_set(&awa, &kept).0, kept);
    }
}
