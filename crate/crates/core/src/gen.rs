//! Seeded random instances for differential testing.

use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::discount::Discount;
use crate::formula::Formula;
use crate::kripke::{Lasso, Letter};
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximal formula depth; depth 1 is an atom or a constant.
    pub depth: usize,
    /// Number of atoms, named `p`, `q`, `r`, ...
    pub atoms: usize,
    pub max_prefix: usize,
    /// At least 1.
    pub max_period: usize,
    /// Draw letter weights from `{0, 1/4, 1/2, 3/4, 1}` instead of `{0, 1}`.
    pub weighted: bool,
    /// Use only exponential discounting.
    pub exponential_only: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { depth: 4, atoms: 2, max_prefix: 4, max_period: 4, weighted: false, exponential_only: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub formula: Formula,
    pub lasso: Lasso,
    /// On the grid `k/16`.
    pub threshold: Rational,
}

pub fn atom_names(n: usize) -> Vec<String> {
    const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    (0..n).map(|i| if i < NAMES.len() { String::from(NAMES[i]) } else { alloc::format!("a{i}") }).collect()
}

/// Deterministic in `seed`.
pub fn random_instance(seed: u64, limits: &Limits) -> Instance {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), limits, atoms: atom_names(limits.atoms.max(1)) };
    let formula = g.formula(limits.depth.max(1));
    let lasso = g.lasso();
    let threshold = rat(g.rng.random_range(0..=16), 16);
    Instance { formula, lasso, threshold }
}

/// A random lasso only.
pub fn random_lasso(seed: u64, limits: &Limits) -> Lasso {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), limits, atoms: atom_names(limits.atoms.max(1)) };
    g.lasso()
}

struct Gen<'a> {
    rng: ChaCha8Rng,
    limits: &'a Limits,
    atoms: Vec<String>,
}

const FACTORS: [(i64, i64); 3] = [(1, 4), (1, 2), (3, 4)];

impl Gen<'_> {
    fn leaf(&mut self) -> Formula {
        match self.rng.random_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Atom(self.atoms[self.rng.random_range(0..self.atoms.len())].clone()),
        }
    }

    fn factor(&mut self) -> Rational {
        let (n, d) = FACTORS[self.rng.random_range(0..FACTORS.len())];
        rat(n, d)
    }

    fn discount(&mut self) -> Discount {
        if self.limits.exponential_only || self.rng.random_bool(0.6) {
            let l = self.factor();
            Discount::exponential(l).expect("factor in (0,1)")
        } else {
            Discount::reciprocal()
        }
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth <= 1 || self.rng.random_bool(0.25) {
            return self.leaf();
        }
        let d = depth - 1;
        match self.rng.random_range(0..10) {
            0 => Formula::not(self.formula(d)),
            1 => Formula::or(self.formula(d), self.formula(d)),
            2 => Formula::and(self.formula(d), self.formula(d)),
            3 => Formula::next(self.formula(d)),
            4 => Formula::until(self.formula(d), self.formula(d)),
            5 | 6 => {
                let disc = self.discount();
                Formula::disc_until(self.formula(d), disc, self.formula(d))
            }
            7 => {
                let l = self.factor();
                Formula::scale(l, self.formula(d))
            }
            8 => {
                let disc = self.discount();
                let z = if self.rng.random_bool(0.5) { rat(0, 1) } else { rat(1, 2) };
                Formula::tend(self.formula(d), disc, z, self.formula(d))
            }
            _ => {
                // G{η} φ desugars to ¬(true U_η ¬φ), three levels deep.
                let disc = self.discount();
                if depth >= 4 && self.rng.random_bool(0.5) {
                    let body = self.formula(depth - 3);
                    Formula::disc_always(disc, body)
                } else {
                    let body = self.formula(d);
                    Formula::disc_eventually(disc, body)
                }
            }
        }
    }

    fn weight(&mut self) -> Rational {
        if self.limits.weighted {
            rat(self.rng.random_range(0..=4), 4)
        } else {
            rat(self.rng.random_range(0..=1), 1)
        }
    }

    fn letter(&mut self) -> Letter {
        Letter((0..self.atoms.len()).map(|_| self.weight()).collect())
    }

    fn lasso(&mut self) -> Lasso {
        let u = self.rng.random_range(0..=self.limits.max_prefix);
        let v = self.rng.random_range(1..=self.limits.max_period.max(1));
        let prefix = (0..u).map(|_| self.letter()).collect();
        let period = (0..v).map(|_| self.letter()).collect();
        Lasso { atoms: self.atoms.clone(), prefix, period }
    }
}
