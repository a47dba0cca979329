//! Exact rational scalars and their `num/den` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The universal scalar: an arbitrary-precision rational.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"num/den"` or a bare integer. The denominator must be positive.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not an exact fraction"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if !den.is_positive() {
                return Err(Error::Parse(format!(
                    "`{text}` must have a positive denominator"
                )));
            }
            Ok(Rational::new(num, den))
        }
        None => {
            let num: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(num))
        }
    }
}

/// Always renders as `num/den`, including integers (`3/1`).
pub fn to_fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Exact `q^e` for a non-negative exponent.
pub fn pow(q: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= q;
    }
    acc
}

/// Serializes as a `num/den` string.
pub fn ser_frac<S: serde::Serializer>(q: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&to_fraction(q))
}

pub fn ser_opt_frac<S: serde::Serializer>(
    q: &Option<Rational>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser_frac(q, ser),
        None => ser.serialize_none(),
    }
}

pub fn is_nonneg(q: &Rational) -> bool {
    !q.is_negative() || q.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 4 / 2 ").unwrap(), int(2));
    }

    #[test]
    fn rejects_non_positive_denominators() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn fraction_form_is_canonical() {
        assert_eq!(to_fraction(&int(3)), "3/1");
        assert_eq!(to_fraction(&ratio(-2, 4)), "-1/2");
        assert_eq!(parse_rational(&to_fraction(&ratio(22, 7))).unwrap(), ratio(22, 7));
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow(&int(5), 0), int(1));
    }
}
