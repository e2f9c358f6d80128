//! Exact fractions backed by arbitrary-precision integers.
//!
//! Every threshold, ratio and part-size comparison in the crate goes through
//! [`Rational`]. Values print as `P/Q` in lowest terms, including integers
//! (`2/1`), so a serialized value is never ambiguous with a decimal.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Builds `num/den` in lowest terms. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// `P/Q` with `Q > 0`, always showing the denominator.
pub fn format(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `P/Q` or a bare integer `P`.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::param(format!("`{text}` is not a fraction P/Q"));
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::param(format!("`{text}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// `⌊value⌋` as a `u64`; `None` for negative or oversized values.
pub fn floor_u64(value: &Rational) -> Option<u64> {
    if value.is_negative() {
        return None;
    }
    value.numer().div_floor(value.denom()).to_u64()
}

/// Smallest non-negative integer strictly greater than `value`.
pub fn strictly_above(value: &Rational) -> Option<u64> {
    if value.is_negative() {
        return Some(0);
    }
    floor_u64(value).and_then(|f| f.checked_add(1))
}

/// Serde adapter writing a [`Rational`] as a `"P/Q"` string.
pub mod serde_pq {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(de::Error::custom)
    }
}
