//! Formula syntax trees and their hash-consed node tables.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::discount::Discount;
use crate::rational::Rational;

/// A formula after desugaring: `F`, `G` and their discounted forms never
/// appear here, they are expanded by the parser and by the helper
/// constructors below.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    /// Native conjunction, valued as the minimum of its operands.
    And(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    DiscUntil(Box<Formula>, Discount, Box<Formula>),
    /// Multiplies the value of the operand by a constant in `(0,1)`.
    Scale(Rational, Box<Formula>),
    /// Discounting towards a limit `z ∈ [0,1]` instead of towards zero.
    Tend(Box<Formula>, Discount, Rational, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn disc_until(a: Formula, d: Discount, b: Formula) -> Formula {
        Formula::DiscUntil(Box::new(a), d, Box::new(b))
    }

    pub fn scale(lambda: Rational, f: Formula) -> Formula {
        Formula::Scale(lambda, Box::new(f))
    }

    pub fn tend(a: Formula, d: Discount, z: Rational, b: Formula) -> Formula {
        Formula::Tend(Box::new(a), d, z, Box::new(b))
    }

    /// `F φ ≡ true U φ`
    pub fn eventually(f: Formula) -> Formula {
        Formula::until(Formula::True, f)
    }

    /// `G φ ≡ ¬F¬φ`
    pub fn always(f: Formula) -> Formula {
        Formula::not(Formula::eventually(Formula::not(f)))
    }

    pub fn disc_eventually(d: Discount, f: Formula) -> Formula {
        Formula::disc_until(Formula::True, d, f)
    }

    pub fn disc_always(d: Discount, f: Formula) -> Formula {
        Formula::not(Formula::disc_eventually(d, Formula::not(f)))
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Atom(_) => Vec::new(),
            Not(a) | Next(a) | Scale(_, a) => alloc::vec![a],
            Or(a, b) | And(a, b) | Until(a, b) | DiscUntil(a, _, b) | Tend(a, _, _, b) => {
                alloc::vec![a, b]
            }
        }
    }

    /// Number of distinct subformulas.
    pub fn size(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            if seen.insert(f) {
                stack.extend(f.children());
            }
        }
        seen.len()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// The set of discount functions used by discounting operators.
    pub fn discounts(&self) -> BTreeSet<Discount> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::DiscUntil(_, d, _) | Formula::Tend(_, d, _, _) => {
                out.insert(d.clone());
            }
            _ => {}
        });
        out
    }

    /// True when only Boolean LTL connectives occur.
    pub fn is_boolean(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::DiscUntil(..) | Formula::Scale(..) | Formula::Tend(..)) {
                ok = false;
            }
        });
        ok
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }
}

/// Prints in the concrete grammar, fully parenthesizing binary operators so
/// the output parses back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(p) => f.write_str(p),
            Not(a) => write!(f, "!{a}"),
            Next(a) => write!(f, "X {a}"),
            Scale(l, a) => write!(f, "scale{{{l}}} {a}"),
            Or(a, b) => write!(f, "({a} | {b})"),
            And(a, b) => write!(f, "({a} & {b})"),
            Until(a, b) => write!(f, "({a} U {b})"),
            DiscUntil(a, d, b) => write!(f, "({a} U{{{d}}} {b})"),
            Tend(a, d, z, b) => write!(f, "({a} O{{{d},{z}}} {b})"),
        }
    }
}

pub type NodeId = usize;

/// One node of a [`Dag`], children referenced by id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    True,
    False,
    Atom(String),
    Not(NodeId),
    Or(NodeId, NodeId),
    And(NodeId, NodeId),
    Next(NodeId),
    Until(NodeId, NodeId),
    DiscUntil(NodeId, Discount, NodeId),
    Scale(Rational, NodeId),
    Tend(NodeId, Discount, Rational, NodeId),
}

/// Hash-consed formula table. Structurally equal subformulas share one id,
/// and children always have smaller ids than their parents.
#[derive(Debug, Clone, Default)]
pub struct Dag {
    nodes: Vec<Node>,
    index: BTreeMap<Node, NodeId>,
}

impl Dag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, f: &Formula) -> NodeId {
        let node = match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Atom(p) => Node::Atom(p.clone()),
            Formula::Not(a) => Node::Not(self.insert(a)),
            Formula::Or(a, b) => Node::Or(self.insert(a), self.insert(b)),
            Formula::And(a, b) => Node::And(self.insert(a), self.insert(b)),
            Formula::Next(a) => Node::Next(self.insert(a)),
            Formula::Until(a, b) => Node::Until(self.insert(a), self.insert(b)),
            Formula::DiscUntil(a, d, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                Node::DiscUntil(a, d.clone(), b)
            }
            Formula::Scale(l, a) => Node::Scale(l.clone(), self.insert(a)),
            Formula::Tend(a, d, z, b) => {
                let (a, b) = (self.insert(a), self.insert(b));
                Node::Tend(a, d.clone(), z.clone(), b)
            }
        };
        self.intern(node)
    }

    pub fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn to_formula(&self, id: NodeId) -> Formula {
        let b = |i: NodeId| Box::new(self.to_formula(i));
        match self.node(id) {
            Node::True => Formula::True,
            Node::False => Formula::False,
            Node::Atom(p) => Formula::Atom(p.clone()),
            Node::Not(a) => Formula::Not(b(*a)),
            Node::Or(x, y) => Formula::Or(b(*x), b(*y)),
            Node::And(x, y) => Formula::And(b(*x), b(*y)),
            Node::Next(a) => Formula::Next(b(*a)),
            Node::Until(x, y) => Formula::Until(b(*x), b(*y)),
            Node::DiscUntil(x, d, y) => Formula::DiscUntil(b(*x), d.clone(), b(*y)),
            Node::Scale(l, a) => Formula::Scale(l.clone(), b(*a)),
            Node::Tend(x, d, z, y) => Formula::Tend(b(*x), d.clone(), z.clone(), b(*y)),
        }
    }
}
