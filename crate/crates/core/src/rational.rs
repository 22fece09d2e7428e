//! Rational scalars and their textual form.
//!
//! Scalars are `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator. The text form is `"p/q"` or a bare integer
//! `"p"`; `q` must be a nonzero run of decimal digits.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn parse_integer(part: &str, whole: &str) -> Result<BigInt> {
    let digits = part.strip_prefix('-').unwrap_or(part);
    if !is_digits(digits) {
        return Err(Error::MalformedRational(whole.to_string()));
    }
    part.parse::<BigInt>()
        .map_err(|_| Error::MalformedRational(whole.to_string()))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_integer(s, text)?)),
        Some((num, den)) => {
            let num = parse_integer(num, text)?;
            if !is_digits(den) {
                return Err(Error::MalformedRational(text.to_string()));
            }
            let den: BigInt = den
                .parse()
                .map_err(|_| Error::MalformedRational(text.to_string()))?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator(text.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Converts an integral rational to `i64`; `None` for fractions or overflow.
pub fn to_i64(value: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if value.is_integer() {
        value.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("4/6").unwrap(), Rational::new(2.into(), 3.into()));
        assert_eq!(parse_rational("-1/2").unwrap(), Rational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational(" 10/5 ").unwrap(), int(2));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "1/", "/2", "a", "1/2/3", "1.5", "1/-2", "--1", "+1", "1 /2", "0x10"] {
            assert!(
                matches!(parse_rational(bad), Err(Error::MalformedRational(_))),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(matches!(parse_rational("3/0"), Err(Error::ZeroDenominator(_))));
        assert!(matches!(parse_rational("0/000"), Err(Error::ZeroDenominator(_))));
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-8/4").unwrap()), "-2");
        assert_eq!(format_rational(&zero()), "0");
    }
}
