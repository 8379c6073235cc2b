//! Exact complex numbers with rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{rational_is_integer, rational_is_negative, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        Self::new(Rational::from_i64(re), Rational::from_i64(im))
    }

    pub fn real(re: i64) -> Self {
        Self::from_i64(re, 0)
    }

    pub fn i() -> Self {
        Self::from_i64(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    /// `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(self.re.clone() / n.clone(), -self.im.clone() / n))
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

fn add(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    GaussianRational::new(&a.re + &b.re, &a.im + &b.im)
}

fn sub(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    GaussianRational::new(&a.re - &b.re, &a.im - &b.im)
}

fn mul(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    GaussianRational::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
}

fn div(a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
    mul(a, &b.inverse().expect("division by zero Gaussian rational"))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                $f(self, rhs)
            }
        }
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $f(&self, &rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                $f(&self, rhs)
            }
        }
        impl $tr<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::from_i64(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_i64(1, 0)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::real(v)
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }
}

/// Writes `3`, `-1/2`, `i`, `-2i`, `(3/4)i`, `1+2i`, `1/2-(1/3)i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if !rational_is_negative(&self.im) {
                write!(f, "+")?;
            }
        }
        let neg = rational_is_negative(&self.im);
        let mag = if neg { -self.im.clone() } else { self.im.clone() };
        if neg {
            write!(f, "-")?;
        }
        if mag.is_one() {
            write!(f, "i")
        } else if rational_is_integer(&mag) {
            write!(f, "{mag}i")
        } else {
            write!(f, "({mag})i")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid Gaussian rational `{0}`")]
pub struct ParseGaussianError(pub String);

impl FromStr for GaussianRational {
    type Err = ParseGaussianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussianError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::from(Rational::parse_decimal(&t).map_err(|_| err())?));
        };
        // split point: last top-level sign that is not the leading character
        let bytes = body.as_bytes();
        let mut depth = 0i32;
        let mut split = None;
        for (pos, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && pos > 0 => split = Some(pos),
                _ => {}
            }
        }
        let (re_text, im_text) = match split {
            Some(pos) => (&body[..pos], &body[pos..]),
            None => ("", body),
        };
        let re = if re_text.is_empty() {
            Rational::zero()
        } else {
            Rational::parse_decimal(re_text).map_err(|_| err())?
        };
        let (negative, mag_text) = match im_text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, im_text.strip_prefix('+').unwrap_or(im_text)),
        };
        let mag_text = mag_text
            .strip_prefix('(')
            .and_then(|m| m.strip_suffix(')'))
            .unwrap_or(mag_text);
        let mag = if mag_text.is_empty() {
            Rational::one()
        } else {
            Rational::parse_decimal(mag_text).map_err(|_| err())?
        };
        Ok(Self::new(re, if negative { -mag } else { mag }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gq(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn field_arithmetic() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::real(-1));
        let a = GaussianRational::from_i64(1, 2);
        let b = GaussianRational::from_i64(3, -1);
        assert_eq!(&a * &b, GaussianRational::from_i64(5, 5));
        assert_eq!(&(&a * &b) / &b, a);
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn display_and_parse() {
        for (text, value) in [
            ("0", GaussianRational::zero()),
            ("-1", GaussianRational::real(-1)),
            ("i", GaussianRational::i()),
            ("-i", -GaussianRational::i()),
            ("2i", GaussianRational::from_i64(0, 2)),
            ("1+2i", GaussianRational::from_i64(1, 2)),
            ("-3-i", GaussianRational::from_i64(-3, -1)),
            (
                "1/2-(1/3)i",
                GaussianRational::new(Rational::from_ratio(1, 2), Rational::from_ratio(-1, 3)),
            ),
        ] {
            assert_eq!(value.to_string(), text);
            assert_eq!(gq(text), value);
        }
        assert!("x".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(a in -30i64..30, b in 1i64..7, c in -30i64..30, d in 1i64..7) {
            let v = GaussianRational::new(Rational::from_ratio(a, b), Rational::from_ratio(c, d));
            prop_assert_eq!(gq(&v.to_string()), v);
        }
    }
}
