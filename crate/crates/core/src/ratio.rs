//! Parsing and formatting for exact rationals.
//!
//! Accepted input forms: `a/b` (integers, b > 0 after sign normalization),
//! a plain integer, or a decimal such as `0.7` which parses exactly as 7/10.
//! Floats never enter the pipeline, so `0.7` means seven tenths, not the
//! nearest f64.

use std::error::Error;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatioError {
    input: String,
    reason: &'static str,
}

impl fmt::Display for ParseRatioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational '{}': {}", self.input, self.reason)
    }
}

impl Error for ParseRatioError {}

fn err(input: &str, reason: &'static str) -> ParseRatioError {
    ParseRatioError {
        input: input.to_string(),
        reason,
    }
}

/// Parses `a/b`, an integer, or an exact decimal.
pub fn parse(input: &str) -> Result<Rational, ParseRatioError> {
    let s = input.trim();
    if s.is_empty() {
        return Err(err(input, "empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| err(input, "numerator is not an integer"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| err(input, "denominator is not an integer"))?;
        if d.is_zero() {
            return Err(err(input, "denominator is zero"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(input, "fractional part is not digits"));
        }
        let negative = whole.starts_with('-');
        let w: BigInt = if whole == "-" || whole.is_empty() {
            BigInt::zero()
        } else {
            whole
                .parse()
                .map_err(|_| err(input, "integer part is not an integer"))?
        };
        let f: BigInt = frac
            .parse()
            .map_err(|_| err(input, "fractional part is not an integer"))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = w.magnitude().clone() * scale.magnitude() + f.magnitude();
        let mut value = Rational::new(BigInt::from(mag), scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = s.parse().map_err(|_| err(input, "not an integer"))?;
    Ok(Rational::from_integer(n))
}

/// Formats as `a` for integers and `a/b` otherwise, always reduced.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest f64; values far outside the double range saturate to infinity.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.numer().sign() == num_bigint::Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Rational from an unsigned integer.
pub fn from_u64(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational a/b from unsigned integers, b > 0.
pub fn from_frac(a: u64, b: u64) -> Rational {
    assert!(b > 0, "zero denominator");
    Rational::new(BigInt::from(a), BigInt::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse("1/32").unwrap(), from_frac(1, 32));
        assert_eq!(parse("3").unwrap(), from_u64(3));
        assert_eq!(parse("0.7").unwrap(), from_frac(7, 10));
        assert_eq!(parse("2.50").unwrap(), from_frac(5, 2));
        assert_eq!(parse("-0.5").unwrap(), -from_frac(1, 2));
        assert_eq!(parse(" 4/128 ").unwrap(), from_frac(1, 32));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("a/b").is_err());
        assert!(parse("1.").is_err());
        assert!(parse("1.2.3").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format(&from_frac(4, 128)), "1/32");
        assert_eq!(format(&from_u64(7)), "7");
    }
}
