//! Alternating weak automata for threshold assertions.
//!
//! Type-1 states are assertions `(ψ > t)` / `(ψ < t)` over subformulas,
//! optionally with a discount shift for an outermost discounting operator.
//! Type-2 states are subformulas (or their negations) of the Boolean LTL
//! formulas used for the `t = 0` cases. Transitions are computed by
//! structural recursion; nested assertions are inlined rather than turned
//! into states, and successor states whose transition is the same constant on
//! every letter are replaced by that constant.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::discount::Discount;
use crate::formula::{Dag, Formula, Node, NodeId};
use crate::kripke::{Alphabet, Letter};
use crate::ltl::{LtlDag, LtlId, LtlNode, Test};
use crate::rational::{in_unit_interval, Rational};
use crate::rewrite::extreme_rewrites;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cmp {
    Gt,
    Lt,
}

impl Cmp {
    pub fn flip(self) -> Cmp {
        match self {
            Cmp::Gt => Cmp::Lt,
            Cmp::Lt => Cmp::Gt,
        }
    }

    pub fn holds(self, value: &Rational, threshold: &Rational) -> bool {
        match self {
            Cmp::Gt => value > threshold,
            Cmp::Lt => value < threshold,
        }
    }
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cmp::Gt => ">",
            Cmp::Lt => "<",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AwaState {
    /// `(ψ cmp t)` where an outermost discount of `ψ` is shifted by `shift`.
    Assert { node: NodeId, shift: u64, cmp: Cmp, threshold: Rational },
    /// A Boolean LTL subformula (`positive`) or its negation.
    Bool { ltl: LtlId, positive: bool },
}

/// Positive Boolean combination of state ids, kept normalized: flattened,
/// constant-free below the root, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoolPlus {
    False,
    True,
    State(usize),
    And(Vec<BoolPlus>),
    Or(Vec<BoolPlus>),
}

impl BoolPlus {
    pub fn constant(b: bool) -> BoolPlus {
        if b {
            BoolPlus::True
        } else {
            BoolPlus::False
        }
    }

    pub fn and(items: impl IntoIterator<Item = BoolPlus>) -> BoolPlus {
        let mut out = Vec::new();
        for item in items {
            match item {
                BoolPlus::True => {}
                BoolPlus::False => return BoolPlus::False,
                BoolPlus::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        Self::collect(out, BoolPlus::True, BoolPlus::And)
    }

    pub fn or(items: impl IntoIterator<Item = BoolPlus>) -> BoolPlus {
        let mut out = Vec::new();
        for item in items {
            match item {
                BoolPlus::False => {}
                BoolPlus::True => return BoolPlus::True,
                BoolPlus::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        Self::collect(out, BoolPlus::False, BoolPlus::Or)
    }

    fn collect(mut out: Vec<BoolPlus>, unit: BoolPlus, wrap: fn(Vec<BoolPlus>) -> BoolPlus) -> BoolPlus {
        out.sort();
        out.dedup();
        match out.len() {
            0 => unit,
            1 => out.pop().expect("one element"),
            _ => wrap(out),
        }
    }

    pub fn as_constant(&self) -> Option<bool> {
        match self {
            BoolPlus::True => Some(true),
            BoolPlus::False => Some(false),
            _ => None,
        }
    }

    pub fn states(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_states(&mut out);
        out
    }

    fn collect_states(&self, out: &mut BTreeSet<usize>) {
        match self {
            BoolPlus::True | BoolPlus::False => {}
            BoolPlus::State(s) => {
                out.insert(*s);
            }
            BoolPlus::And(xs) | BoolPlus::Or(xs) => xs.iter().for_each(|x| x.collect_states(out)),
        }
    }

    pub fn satisfied_by(&self, set: &BTreeSet<usize>) -> bool {
        match self {
            BoolPlus::True => true,
            BoolPlus::False => false,
            BoolPlus::State(s) => set.contains(s),
            BoolPlus::And(xs) => xs.iter().all(|x| x.satisfied_by(set)),
            BoolPlus::Or(xs) => xs.iter().any(|x| x.satisfied_by(set)),
        }
    }

    /// Subset-minimal models, i.e. the minimal DNF cubes.
    pub fn cubes(&self) -> Vec<BTreeSet<usize>> {
        match self {
            BoolPlus::True => alloc::vec![BTreeSet::new()],
            BoolPlus::False => Vec::new(),
            BoolPlus::State(s) => alloc::vec![BTreeSet::from([*s])],
            BoolPlus::Or(xs) => minimal_sets(xs.iter().flat_map(BoolPlus::cubes).collect()),
            BoolPlus::And(xs) => {
                let mut acc = alloc::vec![BTreeSet::new()];
                for x in xs {
                    let right = x.cubes();
                    let mut next = Vec::with_capacity(acc.len() * right.len());
                    for l in &acc {
                        for r in &right {
                            next.push(l.union(r).cloned().collect());
                        }
                    }
                    acc = minimal_sets(next);
                }
                acc
            }
        }
    }

    pub fn map_states(&self, f: &impl Fn(usize) -> usize) -> BoolPlus {
        match self {
            BoolPlus::True => BoolPlus::True,
            BoolPlus::False => BoolPlus::False,
            BoolPlus::State(s) => BoolPlus::State(f(*s)),
            BoolPlus::And(xs) => BoolPlus::and(xs.iter().map(|x| x.map_states(f))),
            BoolPlus::Or(xs) => BoolPlus::or(xs.iter().map(|x| x.map_states(f))),
        }
    }
}

impl fmt::Display for BoolPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[BoolPlus], op: &str| -> fmt::Result {
            f.write_str("(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        };
        match self {
            BoolPlus::True => f.write_str("true"),
            BoolPlus::False => f.write_str("false"),
            BoolPlus::State(s) => write!(f, "q{s}"),
            BoolPlus::And(xs) => join(f, xs, "&"),
            BoolPlus::Or(xs) => join(f, xs, "|"),
        }
    }
}

/// Drops duplicates and strict supersets.
fn minimal_sets(mut sets: Vec<BTreeSet<usize>>) -> Vec<BTreeSet<usize>> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut out: Vec<BTreeSet<usize>> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| m.is_subset(&s)) {
            out.push(s);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Keep exponentially discounted states at shift 0 and move the shift
    /// into the threshold instead.
    pub exponential_fast_path: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { exponential_fast_path: true }
    }
}

/// A fully materialized automaton over a finite alphabet. State 0 is the
/// initial state.
#[derive(Debug, Clone)]
pub struct Awa {
    dag: Dag,
    ltl: LtlDag,
    alphabet: Alphabet,
    states: Vec<AwaState>,
    transitions: Vec<Vec<BoolPlus>>,
}

impl Awa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, id: usize) -> &AwaState {
        &self.states[id]
    }

    pub fn states(&self) -> &[AwaState] {
        &self.states
    }

    pub fn delta(&self, state: usize, letter: usize) -> &BoolPlus {
        &self.transitions[state][letter]
    }

    /// Transition on a letter given by value.
    pub fn delta_on(&self, state: usize, letter: &Letter) -> Result<&BoolPlus, Error> {
        let l = self.alphabet.index_of(letter).ok_or(Error::LetterNotInAlphabet)?;
        Ok(self.delta(state, l))
    }

    pub fn successors(&self, state: usize) -> BTreeSet<usize> {
        self.transitions[state].iter().flat_map(BoolPlus::states).collect()
    }

    /// `(ψ1 U ψ2 < t)` and Type-2 `¬(ψ1 U ψ2)` accept; everything else,
    /// including the tending operator at its limit threshold, rejects.
    pub fn is_accepting(&self, state: usize) -> bool {
        match &self.states[state] {
            AwaState::Assert { node, cmp, .. } => *cmp == Cmp::Lt && matches!(self.dag.node(*node), Node::Until(..)),
            AwaState::Bool { ltl, positive } => !*positive && matches!(self.ltl.node(*ltl), LtlNode::Until(..)),
        }
    }

    pub fn type1_count(&self) -> usize {
        self.states.iter().filter(|s| matches!(s, AwaState::Assert { .. })).count()
    }

    /// Formula of a Type-1 state with its shift applied.
    pub fn assertion_formula(&self, node: NodeId, shift: u64) -> Formula {
        let f = self.dag.to_formula(node);
        match f {
            Formula::DiscUntil(a, d, b) => Formula::DiscUntil(a, d.shifted(shift), b),
            Formula::Tend(a, d, z, b) => Formula::Tend(a, d.shifted(shift), z, b),
            other => other,
        }
    }

    /// Human-readable state description.
    pub fn describe(&self, state: usize) -> String {
        match &self.states[state] {
            AwaState::Assert { node, shift, cmp, threshold } => {
                alloc::format!("({} {cmp} {threshold})", self.assertion_formula(*node, *shift))
            }
            AwaState::Bool { ltl, positive } => {
                let f = self.ltl.to_ltl(*ltl);
                if *positive {
                    f.to_string()
                } else {
                    alloc::format!("!{f}")
                }
            }
        }
    }

    /// Formula node identity used for domination between Type-1 states.
    pub fn node(&self, node: NodeId) -> &Node {
        self.dag.node(node)
    }
}

/// Builds `A_{φ cmp v}` over `alphabet`.
pub fn build_awa(
    f: &Formula,
    cmp: Cmp,
    v: &Rational,
    alphabet: &Alphabet,
    options: BuildOptions,
) -> Result<Awa, Error> {
    if !in_unit_interval(v) {
        return Err(Error::ThresholdOutOfRange(v.to_string()));
    }
    for atom in f.atoms() {
        if alphabet.atom_index(&atom).is_none() {
            return Err(Error::UnknownAtom(atom));
        }
    }
    let mut dag = Dag::new();
    let root = dag.insert(f);
    let mut b = Builder {
        dag,
        ltl: LtlDag::new(),
        alphabet,
        options,
        states: Vec::new(),
        transitions: Vec::new(),
        index: BTreeMap::new(),
        pos: BTreeMap::new(),
    };
    b.resolve(AwaState::Assert { node: root, shift: 0, cmp, threshold: v.clone() }, false)?;
    Ok(b.finish())
}

#[derive(Clone, Copy)]
enum Slot {
    State(usize),
    Constant(bool),
}

struct Builder<'a> {
    dag: Dag,
    ltl: LtlDag,
    alphabet: &'a Alphabet,
    options: BuildOptions,
    states: Vec<AwaState>,
    transitions: Vec<Vec<BoolPlus>>,
    index: BTreeMap<AwaState, Slot>,
    pos: BTreeMap<NodeId, LtlId>,
}

impl Builder<'_> {
    fn resolve(&mut self, s: AwaState, fold: bool) -> Result<BoolPlus, Error> {
        match self.index.get(&s) {
            Some(Slot::State(id)) => return Ok(BoolPlus::State(*id)),
            Some(Slot::Constant(c)) => return Ok(BoolPlus::constant(*c)),
            None => {}
        }
        let id = self.states.len();
        self.states.push(s.clone());
        self.transitions.push(Vec::new());
        self.index.insert(s.clone(), Slot::State(id));
        let mut row = Vec::with_capacity(self.alphabet.len());
        for l in 0..self.alphabet.len() {
            row.push(self.delta_state(&s, l)?);
        }
        if fold {
            if let Some(c) = row[0].as_constant() {
                if row.iter().all(|x| x.as_constant() == Some(c)) {
                    // Only the state itself could refer to it so far, and a
                    // constant row does not.
                    self.index.insert(s, Slot::Constant(c));
                    return Ok(BoolPlus::constant(c));
                }
            }
        }
        self.transitions[id] = row;
        Ok(BoolPlus::State(id))
    }

    /// Keeps the states reachable from the initial one, renumbered in
    /// discovery order.
    fn finish(self) -> Awa {
        let mut order = alloc::vec![0usize];
        let mut seen = BTreeMap::from([(0usize, 0usize)]);
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for row in &self.transitions[s] {
                for t in row.states() {
                    if let alloc::collections::btree_map::Entry::Vacant(e) = seen.entry(t) {
                        e.insert(order.len());
                        order.push(t);
                    }
                }
            }
            i += 1;
        }
        let renumber = |s: usize| seen[&s];
        Awa {
            states: order.iter().map(|&s| self.states[s].clone()).collect(),
            transitions: order
                .iter()
                .map(|&s| self.transitions[s].iter().map(|x| x.map_states(&renumber)).collect())
                .collect(),
            dag: self.dag,
            ltl: self.ltl,
            alphabet: self.alphabet.clone(),
        }
    }

    fn letter(&self, l: usize) -> &Letter {
        &self.alphabet.letters[l]
    }

    fn weight(&self, atom: &str, l: usize) -> &Rational {
        let i = self.alphabet.atom_index(atom).expect("atoms checked before construction");
        self.letter(l).weight(i)
    }

    fn delta_state(&mut self, s: &AwaState, l: usize) -> Result<BoolPlus, Error> {
        match s {
            AwaState::Assert { node, shift, cmp, threshold } => self.delta(*node, *shift, *cmp, threshold, l),
            AwaState::Bool { ltl, positive } => self.delta_bool(*ltl, *positive, l),
        }
    }

    fn successor(&mut self, s: AwaState) -> Result<BoolPlus, Error> {
        self.resolve(s, true)
    }

    fn delta(&mut self, node: NodeId, shift: u64, cmp: Cmp, t: &Rational, l: usize) -> Result<BoolPlus, Error> {
        let one = Rational::one();
        Ok(match self.dag.node(node).clone() {
            Node::True => BoolPlus::constant(cmp.holds(&one, t)),
            Node::False => BoolPlus::constant(cmp.holds(&Rational::zero(), t)),
            Node::Atom(p) => BoolPlus::constant(cmp.holds(self.weight(&p, l), t)),
            Node::Not(a) => self.delta(a, 0, cmp.flip(), &(&one - t), l)?,
            Node::Or(a, b) => {
                let (x, y) = (self.delta(a, 0, cmp, t, l)?, self.delta(b, 0, cmp, t, l)?);
                match cmp {
                    Cmp::Gt => BoolPlus::or([x, y]),
                    Cmp::Lt => BoolPlus::and([x, y]),
                }
            }
            Node::And(a, b) => {
                let (x, y) = (self.delta(a, 0, cmp, t, l)?, self.delta(b, 0, cmp, t, l)?);
                match cmp {
                    Cmp::Gt => BoolPlus::and([x, y]),
                    Cmp::Lt => BoolPlus::or([x, y]),
                }
            }
            Node::Next(a) => self.successor(AwaState::Assert { node: a, shift: 0, cmp, threshold: t.clone() })?,
            Node::Until(a, b) => self.until(node, shift, a, b, cmp, t, l)?,
            Node::DiscUntil(a, d, b) => {
                let d = d.shifted(shift);
                if t.is_zero() {
                    return match cmp {
                        Cmp::Gt => self.delta_pos(node, l),
                        Cmp::Lt => Ok(BoolPlus::False),
                    };
                }
                let tau = t / d.first();
                let out_of_range = match cmp {
                    Cmp::Gt => tau >= one,
                    Cmp::Lt => tau > one,
                };
                if out_of_range {
                    return Ok(BoolPlus::constant(cmp == Cmp::Lt));
                }
                let next = self.next_discounted(node, shift, &d, cmp, t, |t, lambda| t / lambda);
                self.unfold(a, b, cmp, &tau, next, l)?
            }
            Node::Scale(lambda, a) => {
                let s = t / &lambda;
                match cmp {
                    Cmp::Gt if s < one => self.delta(a, 0, cmp, &s, l)?,
                    Cmp::Lt if s <= one => self.delta(a, 0, cmp, &s, l)?,
                    _ => BoolPlus::constant(cmp == Cmp::Lt),
                }
            }
            Node::Tend(a, d, z, b) => {
                if *t == z {
                    return self.until(node, shift, a, b, cmp, t, l);
                }
                let d = d.shifted(shift);
                let eta = d.first();
                let tau = (t - (&one - &eta) * &z) / &eta;
                let constant = match cmp {
                    Cmp::Gt if tau.is_negative() => Some(true),
                    Cmp::Gt if tau >= one => Some(false),
                    Cmp::Lt if tau > one => Some(true),
                    Cmp::Lt if !tau.is_positive() => Some(false),
                    _ => None,
                };
                if let Some(c) = constant {
                    return Ok(BoolPlus::constant(c));
                }
                let next = self.next_discounted(node, shift, &d, cmp, t, |t, lambda| &z + (t - &z) / lambda);
                self.unfold(a, b, cmp, &tau, next, l)?
            }
        })
    }

    /// The state asserting the same about the operator discounted by `η^{+1}`.
    fn next_discounted(
        &self,
        node: NodeId,
        shift: u64,
        d: &Discount,
        cmp: Cmp,
        t: &Rational,
        fold: impl Fn(&Rational, &Rational) -> Rational,
    ) -> AwaState {
        match d.factor() {
            Some(lambda) if self.options.exponential_fast_path => {
                AwaState::Assert { node, shift: 0, cmp, threshold: fold(t, lambda) }
            }
            _ => AwaState::Assert { node, shift: shift + 1, cmp, threshold: t.clone() },
        }
    }

    /// `δ(ψ2 > τ) ∨ (δ(ψ1 > τ) ∧ next)` and its dual for `<`.
    fn unfold(
        &mut self,
        a: NodeId,
        b: NodeId,
        cmp: Cmp,
        tau: &Rational,
        next: AwaState,
        l: usize,
    ) -> Result<BoolPlus, Error> {
        let hit = self.delta(b, 0, cmp, tau, l)?;
        let stay = self.delta(a, 0, cmp, tau, l)?;
        let next = self.successor(next)?;
        Ok(match cmp {
            Cmp::Gt => BoolPlus::or([hit, BoolPlus::and([stay, next])]),
            Cmp::Lt => BoolPlus::and([hit, BoolPlus::or([stay, next])]),
        })
    }

    /// Undiscounted until with self-loop on `(node, shift, cmp, t)`.
    #[allow(clippy::too_many_arguments)]
    fn until(
        &mut self,
        node: NodeId,
        shift: u64,
        a: NodeId,
        b: NodeId,
        cmp: Cmp,
        t: &Rational,
        l: usize,
    ) -> Result<BoolPlus, Error> {
        let one = Rational::one();
        match cmp {
            Cmp::Gt if *t >= one => return Ok(BoolPlus::False),
            Cmp::Gt if t.is_zero() => return self.delta_pos(node, l),
            Cmp::Lt if *t > one => return Ok(BoolPlus::True),
            Cmp::Lt if t.is_zero() => return Ok(BoolPlus::False),
            _ => {}
        }
        let me = AwaState::Assert { node, shift, cmp, threshold: t.clone() };
        self.unfold(a, b, cmp, t, me, l)
    }

    fn delta_pos(&mut self, node: NodeId, l: usize) -> Result<BoolPlus, Error> {
        let id = match self.pos.get(&node) {
            Some(&id) => id,
            None => {
                let (pos, _) = extreme_rewrites(&self.dag.to_formula(node));
                let id = self.ltl.insert(&pos);
                self.pos.insert(node, id);
                id
            }
        };
        self.delta_bool(id, true, l)
    }

    fn delta_bool(&mut self, id: LtlId, positive: bool, l: usize) -> Result<BoolPlus, Error> {
        Ok(match self.ltl.node(id).clone() {
            LtlNode::True => BoolPlus::constant(positive),
            LtlNode::False => BoolPlus::constant(!positive),
            LtlNode::Atom(p, test) => {
                let w = self.weight(&p, l);
                let holds = match test {
                    Test::Positive => !w.is_zero(),
                    Test::Full => w.is_one(),
                };
                BoolPlus::constant(holds == positive)
            }
            LtlNode::Not(a) => self.delta_bool(a, !positive, l)?,
            LtlNode::Or(a, b) | LtlNode::And(a, b) => {
                let disjunctive = matches!(self.ltl.node(id), LtlNode::Or(..)) == positive;
                let (x, y) = (self.delta_bool(a, positive, l)?, self.delta_bool(b, positive, l)?);
                if disjunctive {
                    BoolPlus::or([x, y])
                } else {
                    BoolPlus::and([x, y])
                }
            }
            LtlNode::Next(a) => self.successor(AwaState::Bool { ltl: a, positive })?,
            LtlNode::Until(a, b) => {
                let hit = self.delta_bool(b, positive, l)?;
                let stay = self.delta_bool(a, positive, l)?;
                let me = self.successor(AwaState::Bool { ltl: id, positive })?;
                if positive {
                    BoolPlus::or([hit, BoolPlus::and([stay, me])])
                } else {
                    BoolPlus::and([hit, BoolPlus::or([stay, me])])
                }
            }
        })
    }
}

/// Ranks certifying weakness: every transition other than a self-loop goes
/// to a state of strictly smaller rank.
pub fn weak_ranks(successors: &[BTreeSet<usize>]) -> Result<Vec<usize>, Error> {
    let n = successors.len();
    let mut rank: Vec<Option<usize>> = alloc::vec![None; n];
    let mut pending: Vec<usize> =
        successors.iter().enumerate().map(|(s, succ)| succ.iter().filter(|&&t| t != s).count()).collect();
    let mut preds: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (s, succ) in successors.iter().enumerate() {
        for &t in succ {
            if t != s {
                preds[t].push(s);
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&s| pending[s] == 0).collect();
    while let Some(s) = ready.pop() {
        rank[s] =
            Some(successors[s].iter().filter(|&&t| t != s).map(|&t| rank[t].expect("ranked") + 1).max().unwrap_or(0));
        for &p in &preds[s] {
            pending[p] -= 1;
            if pending[p] == 0 {
                ready.push(p);
            }
        }
    }
    let stuck: Vec<usize> = (0..n).filter(|&s| rank[s].is_none()).collect();
    if !stuck.is_empty() {
        return Err(Error::WeaknessViolation(stuck));
    }
    Ok(rank.into_iter().map(|r| r.expect("ranked")).collect())
}

pub fn check_weakness(awa: &Awa) -> Result<Vec<usize>, Error> {
    let succ: Vec<BTreeSet<usize>> = (0..awa.len()).map(|s| awa.successors(s)).collect();
    weak_ranks(&succ)
}
