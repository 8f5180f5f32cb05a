//! Threshold model checking for LTL with discounting.
//!
//! Formulas assign every infinite computation a satisfaction value in `[0,1]`.
//! A `(formula, threshold)` pair is compiled into an alternating weak
//! automaton whose states are threshold assertions `(ψ > t)` / `(ψ < t)`,
//! then into a Büchi automaton over minimal assertion sets, and finally
//! checked for emptiness against a Kripke structure. Everything that carries
//! semantics is computed in exact rationals; [`oracle`] evaluates formulas
//! directly on lasso words and backs every returned witness.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod awa;
pub mod check;
pub mod discount;
mod error;
pub mod formula;
pub mod gen;
pub mod kripke;
pub mod ltl;
pub mod nba;
pub mod ndfs;
pub mod oracle;
pub mod parse;
pub mod rational;
pub mod rewrite;

pub use awa::{build_awa, check_weakness, Awa, AwaState, BoolPlus, BuildOptions, Cmp};
pub use check::{approximate_value, check_at_least, find_accepting_lasso, satisfiable_above, CheckVerdict};
pub use discount::Discount;
pub use error::{Error, ParseError};
pub use formula::Formula;
pub use kripke::{enumerate_lassos, Alphabet, KripkeStructure, Lasso, Letter};
pub use ltl::Ltl;
pub use nba::{awa_to_nba, dominates, minimize_assertion_set, nba_membership, Nba};
pub use oracle::{eval_bool_ltl, eval_lasso};
pub use parse::parse_formula;
pub use rational::Rational;
pub use rewrite::extreme_rewrites;
