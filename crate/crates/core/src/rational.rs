//! Rational number helpers shared by every module.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a plain integer with surrounding whitespace.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    BigInt::from_str(s).ok().map(Rational::from_integer)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Floor of a rational as a `BigInt`.
pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn is_nonnegative(q: &Rational) -> bool {
    !q.is_negative()
}

pub(crate) fn serialize_rationals<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(format_rational))
}

pub(crate) fn deserialize_rationals<'de, D: Deserializer<'de>>(
    d: D,
) -> Result<Vec<Rational>, D::Error> {
    let raw = Vec::<String>::deserialize(d)?;
    raw.iter()
        .map(|r| {
            parse_rational(r)
                .ok_or_else(|| serde::de::Error::custom(format!("invalid rational {r:?}")))
        })
        .collect()
}
