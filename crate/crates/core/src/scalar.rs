//! Real scalar fields backing the quaternion and transformation types.
//!
//! Two instantiations are provided: `f64` for numerical work and
//! [`Rational`] (arbitrary precision) for exact identities.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal `{0}`")]
pub struct ParseScalarError(pub String);

/// A real field usable as the component type of a quaternion.
pub trait Scalar:
    Num + Clone + Debug + PartialEq + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` for exact arithmetic (no rounding anywhere).
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn to_f64(&self) -> f64;

    /// Whether `value` counts as zero at the given `scale`.
    ///
    /// Exact scalars ignore `rel_tol` and test for zero; floating scalars
    /// test `|value| < rel_tol * |scale|`.
    fn is_negligible(value: &Self, scale: &Self, rel_tol: f64) -> bool;

    /// Decimal text form (`"p/q"` for exact rationals).
    fn to_decimal_string(&self) -> String;

    fn parse_decimal(text: &str) -> Result<Self, ParseScalarError>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(value: &Self, scale: &Self, rel_tol: f64) -> bool {
        value.abs() < rel_tol * scale.abs()
    }

    fn to_decimal_string(&self) -> String {
        format!("{self}")
    }

    fn parse_decimal(text: &str) -> Result<Self, ParseScalarError> {
        let t = text.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| ParseScalarError(text.into()))?;
            let d: f64 = d.trim().parse().map_err(|_| ParseScalarError(text.into()))?;
            if d == 0.0 {
                return Err(ParseScalarError(text.into()));
            }
            return Ok(n / d);
        }
        t.parse().map_err(|_| ParseScalarError(text.into()))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(value: &Self, _scale: &Self, _rel_tol: f64) -> bool {
        value.is_zero()
    }

    fn to_decimal_string(&self) -> String {
        self.to_string()
    }

    fn parse_decimal(text: &str) -> Result<Self, ParseScalarError> {
        parse_exact_decimal(text.trim()).ok_or_else(|| ParseScalarError(text.into()))
    }
}

/// Parses `p/q`, integers, and finite decimals such as `-1.25e-3` exactly.
fn parse_exact_decimal(t: &str) -> Option<Rational> {
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str_radix(&all_digits, 10).ok()?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    if negative {
        value = -value;
    }
    Some(value)
}

/// Exact rational representation of a finite `f64`.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

pub(crate) fn rational_is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub(crate) fn rational_is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_decimal_parsing() {
        assert_eq!(Rational::parse_decimal("3/4").unwrap(), Rational::from_ratio(3, 4));
        assert_eq!(Rational::parse_decimal("-0.25").unwrap(), Rational::from_ratio(-1, 4));
        assert_eq!(Rational::parse_decimal("1.5e2").unwrap(), Rational::from_i64(150));
        assert_eq!(Rational::parse_decimal("2e-1").unwrap(), Rational::from_ratio(1, 5));
        assert!(Rational::parse_decimal("1/0").is_err());
        assert!(Rational::parse_decimal("abc").is_err());
        assert!(Rational::parse_decimal("").is_err());
    }

    #[test]
    fn float_parsing_accepts_fractions() {
        assert_eq!(f64::parse_decimal("1/4").unwrap(), 0.25);
        assert_eq!(f64::parse_decimal("-2.5").unwrap(), -2.5);
        assert!(f64::parse_decimal("1/0").is_err());
    }

    #[test]
    fn text_round_trip() {
        let r = Rational::from_ratio(-7, 3);
        assert_eq!(r.to_decimal_string(), "-7/3");
        assert_eq!(Rational::parse_decimal(&r.to_decimal_string()).unwrap(), r);
        assert_eq!(0.1f64.to_decimal_string(), "0.1");
    }
}
