//! Exact rationals used for every threshold, weight and satisfaction value.

use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= one()
}

/// Parses `digits` or `digits/digits`. Signs and whitespace are rejected.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.is_none_or(digits) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical text form: `a/b`, or just `a` for integers.
pub fn format_rational(x: &Rational) -> String {
    use alloc::string::ToString;
    x.to_string()
}
