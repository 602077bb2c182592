//! Exact rational scalars and their textual form.
//!
//! Every scalar in the pipeline (charges, matrix entries, certificate values)
//! is a [`Rational`]. Text uses `"p/q"` or `"p"` with decimal integers only;
//! floating-point notation is rejected.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?} (expected \"p\" or \"p/q\" with decimal integers)")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

fn parse_int(digits: &str, allow_sign: bool) -> Option<BigInt> {
    let body = match digits.as_bytes().first() {
        Some(b'-') | Some(b'+') if allow_sign => &digits[1..],
        _ => digits,
    };
    if body.is_empty() || !body.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Parses `"p"` or `"p/q"`. The sign may only appear on the numerator.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let malformed = || RationalParseError::Malformed(text.to_string());
    match text.split_once('/') {
        None => parse_int(text, true)
            .map(Rational::from_integer)
            .ok_or_else(malformed),
        Some((num, den)) => {
            let num = parse_int(num, true).ok_or_else(malformed)?;
            let den = parse_int(den, false).ok_or_else(malformed)?;
            if den.is_zero() {
                return Err(RationalParseError::ZeroDenominator(text.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Renders in lowest terms: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Sign as -1, 0 or +1.
pub fn sign(value: &Rational) -> i8 {
    if value.is_positive() {
        1
    } else if value.is_negative() {
        -1
    } else {
        0
    }
}

pub fn is_unit(value: &Rational) -> bool {
    value.abs().is_one()
}

/// Approximate value, for diagnostics and float cross-checks only.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

pub mod serde_str {
    //! Serde adapter rendering a [`Rational`] as its exact string form.
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("4/8").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
    }

    #[test]
    fn rejects_floats_and_junk() {
        for bad in ["0.5", "1e3", "1/", "/2", "1/-2", "a", "1//2", "- 1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator("1/0".into()))
        );
        assert_eq!(parse_rational("  "), Err(RationalParseError::Empty));
    }

    #[test]
    fn renders_lowest_terms() {
        assert_eq!(format_rational(&ratio(2, 4)), "1/2");
        assert_eq!(format_rational(&ratio(-6, 3)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }
}
