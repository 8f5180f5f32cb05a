//! Extreme-value rewrites: Boolean LTL formulas characterizing, on lasso
//! words, when a formula's value is positive (`pos`) and when it is below
//! one (`notone`). On arbitrary words only the implications
//! `value > 0 ⇒ pos` and `value < 1 ⇒ notone` hold.

use num_traits::{One, Zero};

use crate::formula::Formula;
use crate::ltl::{Ltl, Test};

/// Returns `(pos(φ), notone(φ))`.
pub fn extreme_rewrites(f: &Formula) -> (Ltl, Ltl) {
    use Formula::*;
    match f {
        True => (Ltl::True, Ltl::False),
        False => (Ltl::False, Ltl::True),
        Atom(p) => (Ltl::Atom(p.clone(), Test::Positive), Ltl::not(Ltl::Atom(p.clone(), Test::Full))),
        Not(a) => {
            let (pos, notone) = extreme_rewrites(a);
            (notone, pos)
        }
        Or(a, b) => {
            let ((pa, na), (pb, nb)) = (extreme_rewrites(a), extreme_rewrites(b));
            (Ltl::or(pa, pb), Ltl::and(na, nb))
        }
        And(a, b) => {
            let ((pa, na), (pb, nb)) = (extreme_rewrites(a), extreme_rewrites(b));
            (Ltl::and(pa, pb), Ltl::or(na, nb))
        }
        Next(a) => {
            let (pa, na) = extreme_rewrites(a);
            (Ltl::next(pa), Ltl::next(na))
        }
        Until(a, b) => {
            let ((pa, na), (pb, nb)) = (extreme_rewrites(a), extreme_rewrites(b));
            (Ltl::until(pa, pb), release(na, nb))
        }
        DiscUntil(a, d, b) => {
            let ((pa, _), (pb, nb)) = (extreme_rewrites(a), extreme_rewrites(b));
            // Only the first position can reach weight one.
            let notone = if d.first().is_one() { nb } else { Ltl::True };
            (Ltl::until(pa, pb), notone)
        }
        Scale(_, a) => (extreme_rewrites(a).0, Ltl::True),
        Tend(a, d, z, b) => {
            let ((pa, na), (pb, nb)) = (extreme_rewrites(a), extreme_rewrites(b));
            let head_full = d.first().is_one();
            let pos = if z.is_zero() {
                Ltl::until(pa, pb)
            } else if head_full {
                // Past the head every term is bounded below by (1-η(i))·z > 0.
                Ltl::or(pb, pa)
            } else {
                Ltl::True
            };
            let notone = if z.is_one() {
                // value = 1 iff (φ=1) U (ψ=1) or G(φ=1), i.e. a weak until.
                let (full_a, full_b) = (Ltl::not(na), Ltl::not(nb));
                let always_a = Ltl::not(Ltl::until(Ltl::True, Ltl::not(full_a.clone())));
                Ltl::not(Ltl::or(Ltl::until(full_a, full_b), always_a))
            } else if head_full {
                nb
            } else {
                Ltl::True
            };
            (pos, notone)
        }
    }
}

/// `¬(¬a U ¬b)`, the release of `a` and `b`.
fn release(a: Ltl, b: Ltl) -> Ltl {
    Ltl::not(Ltl::until(Ltl::not(a), Ltl::not(b)))
}
