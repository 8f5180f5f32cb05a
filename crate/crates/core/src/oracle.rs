//! Exact evaluation on lasso words.
//!
//! Values are computed per position class of the lasso. For `U` and `U_η`
//! every term at offset `k ≥ |u|+|v|` is dominated by the term at an earlier
//! offset of the same class, so a window of `|u|+|v|` offsets is exact. For
//! the tending operator the terms converge to `z`, which adds one limit term.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::formula::{Dag, Formula, Node};
use crate::kripke::Lasso;
use crate::ltl::{Ltl, LtlDag, LtlNode, Test};
use crate::rational::Rational;
use crate::Error;

/// `[[φ]](w)` for the lasso word `w`.
pub fn eval_lasso(f: &Formula, lasso: &Lasso) -> Result<Rational, Error> {
    Ok(eval_positions(f, lasso)?.swap_remove(0))
}

/// `[[φ]](w^c)` for every position class `c` of `w`.
pub fn eval_positions(f: &Formula, lasso: &Lasso) -> Result<Vec<Rational>, Error> {
    let mut dag = Dag::new();
    let root = dag.insert(f);
    let n = lasso.len();
    let mut vals: Vec<Vec<Rational>> = Vec::with_capacity(dag.len());
    for id in 0..dag.len() {
        let row: Vec<Rational> = match dag.node(id) {
            Node::True => alloc::vec![Rational::one(); n],
            Node::False => alloc::vec![Rational::zero(); n],
            Node::Atom(p) => {
                let i = lasso.atom_index(p).ok_or_else(|| Error::UnknownAtom(p.clone()))?;
                (0..n).map(|c| lasso.letter(c).weight(i).clone()).collect()
            }
            Node::Not(a) => vals[*a].iter().map(|v| Rational::one() - v).collect(),
            Node::Or(a, b) => (0..n).map(|c| vals[*a][c].clone().max(vals[*b][c].clone())).collect(),
            Node::And(a, b) => (0..n).map(|c| vals[*a][c].clone().min(vals[*b][c].clone())).collect(),
            Node::Next(a) => (0..n).map(|c| vals[*a][lasso.next_class(c)].clone()).collect(),
            Node::Scale(l, a) => vals[*a].iter().map(|v| l * v).collect(),
            Node::Until(a, b) => (0..n)
                .map(|c| {
                    let (mut best, mut prefix) = (Rational::zero(), Rational::one());
                    for k in 0..n {
                        let pos = lasso.class(c + k);
                        best = best.max(vals[*b][pos].clone().min(prefix.clone()));
                        prefix = prefix.min(vals[*a][pos].clone());
                    }
                    best
                })
                .collect(),
            Node::DiscUntil(a, d, b) => (0..n)
                .map(|c| {
                    let (mut best, mut prefix) = (Rational::zero(), Rational::one());
                    for k in 0..n {
                        let pos = lasso.class(c + k);
                        let w = d.eval(k as u64);
                        best = best.max((&w * &vals[*b][pos]).min(prefix.clone()));
                        prefix = prefix.min(&w * &vals[*a][pos]);
                    }
                    best
                })
                .collect(),
            Node::Tend(a, d, z, b) => (0..n)
                .map(|c| {
                    let (mut best, mut prefix) = (Rational::zero(), Rational::one());
                    for k in 0..n {
                        let pos = lasso.class(c + k);
                        let w = d.eval(k as u64);
                        let rest = (Rational::one() - &w) * z;
                        best = best.max((&w * &vals[*b][pos] + &rest).min(prefix.clone()));
                        prefix = prefix.min(&w * &vals[*a][pos] + &rest);
                    }
                    best.max(z.clone().min(prefix))
                })
                .collect(),
        };
        vals.push(row);
    }
    Ok(vals.swap_remove(root))
}

/// Truth of a Boolean LTL formula over atom tests on `w`.
pub fn eval_bool_ltl(f: &Ltl, lasso: &Lasso) -> Result<bool, Error> {
    let mut dag = LtlDag::new();
    let root = dag.insert(f);
    let n = lasso.len();
    let mut vals: Vec<Vec<bool>> = Vec::with_capacity(dag.len());
    for id in 0..dag.len() {
        let row: Vec<bool> = match dag.node(id) {
            LtlNode::True => alloc::vec![true; n],
            LtlNode::False => alloc::vec![false; n],
            LtlNode::Atom(p, test) => {
                let i = lasso.atom_index(p).ok_or_else(|| Error::UnknownAtom(p.clone()))?;
                (0..n)
                    .map(|c| {
                        let w = lasso.letter(c).weight(i);
                        match test {
                            Test::Positive => !w.is_zero(),
                            Test::Full => w.is_one(),
                        }
                    })
                    .collect()
            }
            LtlNode::Not(a) => vals[*a].iter().map(|v| !v).collect(),
            LtlNode::Or(a, b) => (0..n).map(|c| vals[*a][c] || vals[*b][c]).collect(),
            LtlNode::And(a, b) => (0..n).map(|c| vals[*a][c] && vals[*b][c]).collect(),
            LtlNode::Next(a) => (0..n).map(|c| vals[*a][lasso.next_class(c)]).collect(),
            LtlNode::Until(a, b) => (0..n)
                .map(|c| {
                    for k in 0..n {
                        let pos = lasso.class(c + k);
                        if vals[*b][pos] {
                            return true;
                        }
                        if !vals[*a][pos] {
                            return false;
                        }
                    }
                    false
                })
                .collect(),
        };
        vals.push(row);
    }
    Ok(vals[root][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;
    use crate::rational::rat;

    fn value(f: &str, l: &Lasso) -> Rational {
        eval_lasso(&parse_formula(f).unwrap(), l).unwrap()
    }

    /// Positions `0..horizon` of the word, evaluated by unrolling every
    /// operator over the finite horizon. Exact at position 0 for formulas
    /// without the tending operator when the horizon is generous.
    fn unrolled(f: &Formula, l: &Lasso, horizon: usize) -> Vec<Rational> {
        use Formula::*;
        let sup = |h: usize, term: &dyn Fn(usize, usize) -> (Rational, Rational)| -> Vec<Rational> {
            (0..h)
                .map(|i| {
                    let (mut best, mut prefix) = (Rational::zero(), Rational::one());
                    for k in 0..h - i {
                        let (hit, stay) = term(i, k);
                        best = best.max(hit.min(prefix.clone()));
                        prefix = prefix.min(stay);
                    }
                    best
                })
                .collect()
        };
        match f {
            True => alloc::vec![Rational::one(); horizon],
            False => alloc::vec![Rational::zero(); horizon],
            Atom(p) => {
                let a = l.atom_index(p).unwrap();
                (0..horizon).map(|i| l.letter(l.class(i)).weight(a).clone()).collect()
            }
            Not(a) => unrolled(a, l, horizon).into_iter().map(|v| Rational::one() - v).collect(),
            Or(a, b) => {
                unrolled(a, l, horizon).into_iter().zip(unrolled(b, l, horizon)).map(|(x, y)| x.max(y)).collect()
            }
            And(a, b) => {
                unrolled(a, l, horizon).into_iter().zip(unrolled(b, l, horizon)).map(|(x, y)| x.min(y)).collect()
            }
            Next(a) => {
                let mut v = unrolled(a, l, horizon + 1);
                v.remove(0);
                v
            }
            Scale(s, a) => unrolled(a, l, horizon).into_iter().map(|v| s * v).collect(),
            Until(a, b) => {
                let (va, vb) = (unrolled(a, l, horizon), unrolled(b, l, horizon));
                sup(horizon, &|i, k| (vb[i + k].clone(), va[i + k].clone()))
            }
            DiscUntil(a, d, b) => {
                let (va, vb) = (unrolled(a, l, horizon), unrolled(b, l, horizon));
                sup(horizon, &|i, k| {
                    let w = d.eval(k as u64);
                    (&w * &vb[i + k], &w * &va[i + k])
                })
            }
            Tend(..) => unreachable!(),
        }
    }

    fn lasso_p(prefix: &[bool], period: &[bool]) -> Lasso {
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
    fn discounted_eventually_is_power() {
        for k in 0..8 {
            let mut prefix = alloc::vec![false; k];
            prefix.push(true);
            let l = lasso_p(&prefix, &[false]);
            assert_eq!(value("F{exp(1/2)} p", &l), rat(1, 1 << k));
            assert_eq!(value("F{recip} p", &l), rat(1, k as i64 + 1));
        }
        assert_eq!(value("F{exp(1/2)} p", &lasso_p(&[], &[false])), rat(0, 1));
    }

    #[test]
    fn discounted_always_approaches_one() {
        // G{η} p = ¬F{η}¬p; on p^k ¬p^ω it is 1 - η(k).
        let l = lasso_p(&[true, true, true], &[false]);
        assert_eq!(value("G{exp(1/2)} p", &l), rat(7, 8));
        assert_eq!(value("G{exp(1/2)} p", &lasso_p(&[], &[true])), rat(1, 1));
    }

    #[test]
    fn weighted_atoms_and_scale() {
        let l = Lasso {
            atoms: alloc::vec!["p".into()],
            prefix: alloc::vec![],
            period: alloc::vec![crate::kripke::Letter(alloc::vec![rat(3, 4)])],
        };
        assert_eq!(value("p", &l), rat(3, 4));
        assert_eq!(value("!p", &l), rat(1, 4));
        assert_eq!(value("scale{1/3} p", &l), rat(1, 4));
        assert_eq!(value("F p", &l), rat(3, 4));
        assert_eq!(value("F{exp(1/2)} p", &l), rat(3, 4));
        assert_eq!(value("X X F{exp(1/2)} X p", &l), rat(3, 4));
    }

    #[test]
    fn tend_limit_term() {
        // p never holds: terms are (1-η(k))·z and converge to z.
        let never = lasso_p(&[], &[false]);
        assert_eq!(value("true O{exp(1/2), 1/2} p", &never), rat(1, 2));
        // p holds at 0: the first term is η(0)·1 = 1.
        assert_eq!(value("true O{exp(1/2), 1/2} p", &lasso_p(&[true], &[false])), rat(1, 1));
        // φ = p is false at 0, so every term past the first is capped by
        // η(0)·0 + (1-η(0))·z = 0 for η(0)=1.
        assert_eq!(value("p O{exp(1/2), 1/2} false", &never), rat(0, 1));
        // With η = recip+1, η(0) = 1/2, b_0 = 1/4, and a_0 = 1/4 as well.
        let f = Formula::tend(
            Formula::atom("p"),
            crate::discount::Discount::reciprocal().shifted(1),
            rat(1, 2),
            Formula::False,
        );
        assert_eq!(eval_lasso(&f, &never).unwrap(), rat(1, 4));
    }

    #[test]
    fn bool_ltl() {
        let p = Ltl::Atom("p".into(), Test::Positive);
        let gf = Ltl::not(Ltl::until(Ltl::True, Ltl::not(Ltl::until(Ltl::True, p.clone()))));
        assert!(eval_bool_ltl(&gf, &lasso_p(&[], &[false, true])).unwrap());
        assert!(!eval_bool_ltl(&gf, &lasso_p(&[true, true], &[false])).unwrap());
        assert!(eval_bool_ltl(&Ltl::next(p.clone()), &lasso_p(&[false], &[true])).unwrap());
    }

    #[test]
    fn unknown_atom() {
        assert_eq!(
            eval_lasso(&parse_formula("q").unwrap(), &lasso_p(&[], &[true])),
            Err(Error::UnknownAtom("q".into()))
        );
    }

    #[test]
    fn window_matches_unrolling() {
        let words = [
            lasso_p(&[], &[true]),
            lasso_p(&[false, true], &[false]),
            lasso_p(&[true], &[false, true, true]),
            lasso_p(&[false, false, true], &[true, false]),
        ];
        let formulas = [
            "p U X !p",
            "(p U{exp(1/2)} !p) | X X p",
            "G{recip} (p | X p)",
            "F{exp(3/4)} (p & F{recip} !p)",
            "!(p U{exp(1/4)} (X p U{recip} !p))",
            "scale{1/2} F{exp(1/2)} X p",
        ];
        for w in &words {
            for s in formulas {
                let f = parse_formula(s).unwrap();
                let exact = eval_positions(&f, w).unwrap();
                let h = 8 * w.len() * (f.depth() + 1);
                let approx = unrolled(&f, w, h);
                for c in 0..w.len() {
                    assert_eq!(exact[c], approx[c], "{s} on {w} at {c}");
                }
            }
        }
    }
}
