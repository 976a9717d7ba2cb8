//! Exact rational coefficients.
//!
//! Coefficients travel as canonical strings (`"-3/2"`, `"2"`) in every file
//! format; decimal notation is rejected so that no value ever round-trips
//! through floating point.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?} (expected an integer or p/q, e.g. \"-3/2\")")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parse `[-]digits[/digits]` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let invalid = || RationalParseError::Invalid(t.to_string());
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let n = parse_digits(n).ok_or_else(invalid)?;
            let d = parse_digits(d).ok_or_else(invalid)?;
            if d.is_zero() {
                return Err(RationalParseError::ZeroDenominator(t.to_string()));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(parse_digits(body).ok_or_else(invalid)?),
    };
    Ok(if negative { -value } else { value })
}

/// Canonical text form: `"p/q"` with positive `q`, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Serde adapter storing a [`Rational`] as its canonical string.
pub mod serde_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational(" -0 ").unwrap(), int(0));
    }

    #[test]
    fn rejects_decimals_and_junk() {
        assert!(matches!(parse_rational("1.5"), Err(RationalParseError::Invalid(_))));
        assert!(matches!(parse_rational("+2"), Err(RationalParseError::Invalid(_))));
        assert!(matches!(parse_rational("1/-2"), Err(RationalParseError::Invalid(_))));
        assert!(matches!(parse_rational("3/0"), Err(RationalParseError::ZeroDenominator(_))));
        assert_eq!(parse_rational(""), Err(RationalParseError::Empty));
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&frac(4, 2)), "2");
        assert_eq!(format_rational(&int(0)), "0");
    }
}
