//! Numeric field abstraction shared by the exact and floating evaluation paths.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// An ordered field we can run the closed-form formulas and recurrences in.
///
/// Implemented for [`Rational`] (exact path) and `f64` (real-valued path for
/// parameters that are not rational).
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"3.5"` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Domain(format!("cannot parse {t:?} as a rational number"));
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Domain(format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = int.abs() * &scale + frac;
        let num = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(num, scale));
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

/// Converts a float to the exact rational it represents.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_f64(x)
}

pub(crate) fn is_even_integer(x: &BigInt) -> bool {
    (x % BigInt::from(2)).is_zero()
}

#[cfg(test)]
pub(crate) fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("7/2").unwrap(), ratio(7, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), ratio(-3, 1));
        assert_eq!(parse_rational("3.5").unwrap(), ratio(7, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("4/-6").unwrap(), ratio(-2, 3));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("1.2e3").is_err());
    }

    #[test]
    fn rational_to_f64_is_nearest() {
        assert_eq!(Scalar::to_f64(&ratio(1, 4)), 0.25);
        assert_eq!(Scalar::to_f64(&ratio(-7, 2)), -3.5);
    }
}
