//! Exact rational scalars and their canonical text form.
//!
//! Every coefficient in this crate is a `Scalar` (arbitrary-precision
//! rational).  The canonical text form is `p/q` with q > 1 and gcd(|p|, q) = 1,
//! or just `p` when the denominator is 1.  Parsing accepts only the canonical
//! form: `2/4`, `1/1`, `+3`, `007` and `1/-2` are all rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Scalar = BigRational;

/// Scalar from an integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar p/q.  Panics when q = 0.
pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical text form, `p/q` or `p`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("empty scalar")]
    Empty,
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{0}` is not in lowest terms")]
    NotLowestTerms(String),
    #[error("`{0}` is not in canonical form, expected `{1}`")]
    NotCanonical(String, String),
}

/// Parses the canonical `p/q` form.
///
/// The denominator must be positive and coprime to the numerator; a
/// denominator of 1 must be omitted.  Non-canonical spellings of the same
/// number are errors, so parse-then-format is the identity on accepted input.
pub fn parse_scalar(s: &str) -> Result<Scalar, ScalarParseError> {
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer =
        BigInt::from_str(num_str).map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
    let value = match den_str {
        None => BigRational::from_integer(numer),
        Some(d) => {
            let denom =
                BigInt::from_str(d).map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
            if denom.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(s.to_string()));
            }
            if denom.is_positive() && numer.gcd(&denom) != BigInt::one() {
                return Err(ScalarParseError::NotLowestTerms(s.to_string()));
            }
            BigRational::new(numer, denom)
        }
    };
    let canonical = format_scalar(&value);
    if canonical != s {
        return Err(ScalarParseError::NotCanonical(s.to_string(), canonical));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_scalar(&int(5)), "5");
        assert_eq!(format_scalar(&int(-5)), "-5");
        assert_eq!(format_scalar(&int(0)), "0");
        assert_eq!(format_scalar(&frac(1, 2)), "1/2");
        assert_eq!(format_scalar(&frac(-1, 2)), "-1/2");
        assert_eq!(format_scalar(&frac(2, -4)), "-1/2");
    }

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_scalar("5").unwrap(), int(5));
        assert_eq!(parse_scalar("-12").unwrap(), int(-12));
        assert_eq!(parse_scalar("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("-7/3").unwrap(), frac(-7, 3));
        assert_eq!(parse_scalar("0").unwrap(), int(0));
    }

    #[test]
    fn rejects_unreduced_fraction() {
        assert!(matches!(
            parse_scalar("2/4"),
            Err(ScalarParseError::NotLowestTerms(_))
        ));
        assert!(matches!(
            parse_scalar("-6/3"),
            Err(ScalarParseError::NotLowestTerms(_))
        ));
    }

    #[test]
    fn rejects_non_canonical_spellings() {
        for bad in ["1/1", "+3", "007", "-0", "1/-2", "0/5", ""] {
            assert!(parse_scalar(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(matches!(
            parse_scalar("1/0"),
            Err(ScalarParseError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn round_trips_canonical_text() {
        for s in ["0", "1", "-1", "22/7", "-355/113", "123456789123456789"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
    }
}
