//! Discounting functions: strictly decreasing sequences in `(0,1]` that tend
//! to zero, evaluated exactly.

use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::rational::{one, Rational};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiscountKind {
    /// `i ↦ λ^i` with `λ ∈ (0,1)`.
    Exponential(Rational),
    /// `i ↦ 1/(i+1)`.
    Reciprocal,
}

/// A built-in discounting function shifted by `shift` positions:
/// `η^{+k}(i) = η(i + k)`. Shifting a shifted function adds the offsets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Discount {
    pub kind: DiscountKind,
    pub shift: u64,
}

impl Discount {
    pub fn exponential(lambda: Rational) -> Result<Self, Error> {
        if lambda <= Rational::zero() || lambda >= one() {
            return Err(Error::ConstantOutOfRange {
                what: "exponential discount factor",
                value: alloc::format!("{lambda}"),
            });
        }
        Ok(Discount { kind: DiscountKind::Exponential(lambda), shift: 0 })
    }

    pub fn reciprocal() -> Self {
        Discount { kind: DiscountKind::Reciprocal, shift: 0 }
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self.kind, DiscountKind::Exponential(_))
    }

    pub fn factor(&self) -> Option<&Rational> {
        match &self.kind {
            DiscountKind::Exponential(l) => Some(l),
            DiscountKind::Reciprocal => None,
        }
    }

    pub fn eval(&self, i: u64) -> Rational {
        let idx = i + self.shift;
        match &self.kind {
            DiscountKind::Exponential(l) => Pow::pow(l, idx),
            DiscountKind::Reciprocal => Rational::new(BigInt::one(), BigInt::from(idx) + 1),
        }
    }

    pub fn first(&self) -> Rational {
        self.eval(0)
    }

    pub fn shifted(&self, k: u64) -> Discount {
        Discount { kind: self.kind.clone(), shift: self.shift + k }
    }

    pub fn unshifted(&self) -> Discount {
        Discount { kind: self.kind.clone(), shift: 0 }
    }

    /// Least `i` with `η(i) < t`; every earlier value is `≥ t`.
    pub fn index_below(&self, t: &Rational) -> Result<u64, Error> {
        if !t.is_positive() {
            return Err(Error::NonPositiveThreshold(alloc::format!("{t}")));
        }
        match &self.kind {
            DiscountKind::Reciprocal => {
                // 1/(i+k+1) < t  ⇔  i+k+1 > 1/t
                let bound = (t.recip()).floor().to_integer();
                let need = bound.to_u64().unwrap_or(u64::MAX);
                Ok(need.saturating_sub(self.shift))
            }
            DiscountKind::Exponential(_) => {
                let mut i = 0;
                let mut value = self.eval(0);
                let factor = self.factor().cloned().unwrap_or_else(one);
                while value >= *t {
                    value *= &factor;
                    i += 1;
                }
                Ok(i)
            }
        }
    }
}

impl fmt::Display for Discount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DiscountKind::Exponential(l) => write!(f, "exp({l})")?,
            DiscountKind::Reciprocal => f.write_str("recip")?,
        }
        if self.shift > 0 {
            write!(f, "+{}", self.shift)?;
        }
        Ok(())
    }
}
