//! Boolean LTL over atom tests.
//!
//! Atoms of weighted letters are observed through two Boolean tests: whether
//! the weight is positive and whether it is exactly one. On Boolean letters
//! both tests coincide with plain membership.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Test {
    /// weight > 0
    Positive,
    /// weight = 1
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ltl {
    True,
    False,
    Atom(String, Test),
    Not(Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Next(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
}

impl Ltl {
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Ltl) -> Ltl {
        match a {
            Ltl::True => Ltl::False,
            Ltl::False => Ltl::True,
            Ltl::Not(inner) => *inner,
            other => Ltl::Not(Box::new(other)),
        }
    }

    pub fn or(a: Ltl, b: Ltl) -> Ltl {
        match (a, b) {
            (Ltl::True, _) | (_, Ltl::True) => Ltl::True,
            (Ltl::False, x) | (x, Ltl::False) => x,
            (a, b) => Ltl::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn and(a: Ltl, b: Ltl) -> Ltl {
        match (a, b) {
            (Ltl::False, _) | (_, Ltl::False) => Ltl::False,
            (Ltl::True, x) | (x, Ltl::True) => x,
            (a, b) => Ltl::And(Box::new(a), Box::new(b)),
        }
    }

    pub fn next(a: Ltl) -> Ltl {
        match a {
            c @ (Ltl::True | Ltl::False) => c,
            other => Ltl::Next(Box::new(other)),
        }
    }

    pub fn until(a: Ltl, b: Ltl) -> Ltl {
        match (a, b) {
            (_, c @ (Ltl::True | Ltl::False)) => c,
            (Ltl::False, b) => b,
            (a, b) => Ltl::Until(Box::new(a), Box::new(b)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(..) => 1,
            Ltl::Not(a) | Ltl::Next(a) => 1 + a.size(),
            Ltl::Or(a, b) | Ltl::And(a, b) | Ltl::Until(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for Ltl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ltl::True => f.write_str("true"),
            Ltl::False => f.write_str("false"),
            Ltl::Atom(p, Test::Positive) => write!(f, "[{p}>0]"),
            Ltl::Atom(p, Test::Full) => write!(f, "[{p}=1]"),
            Ltl::Not(a) => write!(f, "!{a}"),
            Ltl::Next(a) => write!(f, "X {a}"),
            Ltl::Or(a, b) => write!(f, "({a} | {b})"),
            Ltl::And(a, b) => write!(f, "({a} & {b})"),
            Ltl::Until(a, b) => write!(f, "({a} U {b})"),
        }
    }
}

pub type LtlId = usize;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum LtlNode {
    True,
    False,
    Atom(String, Test),
    Not(LtlId),
    Or(LtlId, LtlId),
    And(LtlId, LtlId),
    Next(LtlId),
    Until(LtlId, LtlId),
}

/// Hash-consed table of Boolean LTL nodes; children precede parents.
#[derive(Debug, Clone, Default)]
pub struct LtlDag {
    nodes: Vec<LtlNode>,
    index: BTreeMap<LtlNode, LtlId>,
}

impl LtlDag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, f: &Ltl) -> LtlId {
        let node = match f {
            Ltl::True => LtlNode::True,
            Ltl::False => LtlNode::False,
            Ltl::Atom(p, t) => LtlNode::Atom(p.clone(), *t),
            Ltl::Not(a) => LtlNode::Not(self.insert(a)),
            Ltl::Or(a, b) => LtlNode::Or(self.insert(a), self.insert(b)),
            Ltl::And(a, b) => LtlNode::And(self.insert(a), self.insert(b)),
            Ltl::Next(a) => LtlNode::Next(self.insert(a)),
            Ltl::Until(a, b) => LtlNode::Until(self.insert(a), self.insert(b)),
        };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    pub fn node(&self, id: LtlId) -> &LtlNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn to_ltl(&self, id: LtlId) -> Ltl {
        let b = |i: LtlId| Box::new(self.to_ltl(i));
        match self.node(id) {
            LtlNode::True => Ltl::True,
            LtlNode::False => Ltl::False,
            LtlNode::Atom(p, t) => Ltl::Atom(p.clone(), *t),
            LtlNode::Not(a) => Ltl::Not(b(*a)),
            LtlNode::Or(x, y) => Ltl::Or(b(*x), b(*y)),
            LtlNode::And(x, y) => Ltl::And(b(*x), b(*y)),
            LtlNode::Next(a) => Ltl::Next(b(*a)),
            LtlNode::Until(x, y) => Ltl::Until(b(*x), b(*y)),
        }
    }
}
