//! Exact rational scalars and their `"p/q"` string encoding.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};

/// Rational with machine-word numerator and denominator.
pub type Rational = Ratio<i64>;

/// Arbitrary-precision rational, used where products of many terms occur.
pub type BigRational = Ratio<BigInt>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Encodes as `"p/q"`, always including the denominator.
pub fn format_ratio<T: fmt::Display + Clone + num_integer::Integer>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn split_ratio(s: &str) -> Result<(&str, Option<&str>)> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    Ok(match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    })
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let (n, d) = split_ratio(s)?;
    let n: i64 = n.parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let d: i64 = match d {
        Some(d) => d.parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?,
        None => 1,
    };
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

pub fn parse_big_rational(s: &str) -> Result<BigRational> {
    let (n, d) = split_ratio(s)?;
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let d: BigInt = match d {
        Some(d) => d.parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

pub fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Converts back to a word-size rational when it fits.
pub fn from_big(r: &BigRational) -> Option<Rational> {
    let n: i64 = r.numer().try_into().ok()?;
    let d: i64 = r.denom().try_into().ok()?;
    Some(Rational::new(n, d))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom() == &1
}

pub fn is_half_integer(r: &Rational) -> bool {
    *r.denom() == 1 || *r.denom() == 2
}

/// Serde adapter for a single [`Rational`] as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a vector of [`Rational`] as `"p/q"` strings.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_ratio).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Serde adapter for a vector of [`BigRational`] as `"p/q"` strings.
pub mod serde_big_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_ratio).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_big_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
