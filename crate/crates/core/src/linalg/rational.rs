//! Exact rationals.
//!
//! The scalar everywhere is [`num_rational::BigRational`], which keeps values in lowest terms
//! with a positive denominator. This module adds a strict literal parser and a few
//! constructors used throughout the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad rational literal `{literal}`: {reason}")]
pub struct RationalParseError {
    pub literal: String,
    pub reason: &'static str,
}

/// Builds `numer / denom` reduced to lowest terms. Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
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

/// Parses an integer (`-7`) or fraction (`3/4`, `-1/3`) literal.
///
/// Decimal and exponent forms are refused, so no value silently passes through a float.
/// The denominator must be a positive unsigned integer.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let err = |reason| RationalParseError {
        literal: text.to_string(),
        reason,
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(err("empty literal"));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(err("decimal literals are not accepted; write p/q"));
    }
    let (num_part, den_part) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num_part.strip_prefix(['-', '+']).unwrap_or(num_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("numerator is not an integer"));
    }
    let numer: BigInt = num_part
        .trim_start_matches('+')
        .parse()
        .map_err(|_| err("numerator is not an integer"))?;
    let denom = match den_part {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("denominator is not a positive integer"));
            }
            let d: BigInt = d.parse().map_err(|_| err("denominator is not an integer"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Renders `n` for integers and `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
