//! Quaternion arithmetic over an exact or floating real field, with the
//! symplectic view `q = z + ζj` (`z = x0 + x1 i`, `ζ = x2 + x3 i`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuaternionError {
    #[error("the zero quaternion has no inverse")]
    ZeroQuaternion,
    #[error("degenerate quaternionic Möbius transformation (Δ = {delta})")]
    DegenerateTransform { delta: String },
    #[error("the point is a pole of the transformation (cq + d = 0)")]
    PoleAtPoint,
}

/// `x0 + x1 i + x2 j + x3 k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<S> {
    pub x0: S,
    pub x1: S,
    pub x2: S,
    pub x3: S,
}

pub type ExactQuaternion = Quaternion<Rational>;

/// The pair `(z, ζ)` with `q = z + ζj`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticPair<S> {
    pub z: Complex<S>,
    pub zeta: Complex<S>,
}

impl<S> SymplecticPair<S> {
    pub fn new(z: Complex<S>, zeta: Complex<S>) -> Self {
        Self { z, zeta }
    }
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(x0: S, x1: S, x2: S, x3: S) -> Self {
        Self { x0, x1, x2, x3 }
    }

    pub fn from_i64(x0: i64, x1: i64, x2: i64, x3: i64) -> Self {
        Self::new(S::from_i64(x0), S::from_i64(x1), S::from_i64(x2), S::from_i64(x3))
    }

    pub fn real(x0: S) -> Self {
        Self::new(x0, S::zero(), S::zero(), S::zero())
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn i() -> Self {
        Self::new(S::zero(), S::one(), S::zero(), S::zero())
    }

    pub fn j() -> Self {
        Self::new(S::zero(), S::zero(), S::one(), S::zero())
    }

    pub fn k() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::one())
    }

    pub fn components(&self) -> [S; 4] {
        [self.x0.clone(), self.x1.clone(), self.x2.clone(), self.x3.clone()]
    }

    pub fn from_components(c: [S; 4]) -> Self {
        let [x0, x1, x2, x3] = c;
        Self::new(x0, x1, x2, x3)
    }

    pub fn is_zero(&self) -> bool {
        self.x0.is_zero() && self.x1.is_zero() && self.x2.is_zero() && self.x3.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x0.is_one() && self.x1.is_zero() && self.x2.is_zero() && self.x3.is_zero()
    }

    /// Negates the three imaginary components.
    pub fn conjugate(&self) -> Self {
        Self::new(self.x0.clone(), -self.x1.clone(), -self.x2.clone(), -self.x3.clone())
    }

    /// `x0² + x1² + x2² + x3²`, exact in exact mode.
    pub fn norm_sqr(&self) -> S {
        self.x0.clone() * self.x0.clone()
            + self.x1.clone() * self.x1.clone()
            + self.x2.clone() * self.x2.clone()
            + self.x3.clone() * self.x3.clone()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().to_f64().sqrt()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            self.x0.clone() * s.clone(),
            self.x1.clone() * s.clone(),
            self.x2.clone() * s.clone(),
            self.x3.clone() * s.clone(),
        )
    }

    pub fn inverse(&self) -> Result<Self, QuaternionError> {
        if self.is_zero() {
            return Err(QuaternionError::ZeroQuaternion);
        }
        let n = self.norm_sqr();
        let c = self.conjugate();
        Ok(Self::new(c.x0 / n.clone(), c.x1 / n.clone(), c.x2 / n.clone(), c.x3 / n))
    }

    pub fn symplectic_split(&self) -> SymplecticPair<S> {
        SymplecticPair {
            z: Complex::new(self.x0.clone(), self.x1.clone()),
            zeta: Complex::new(self.x2.clone(), self.x3.clone()),
        }
    }

    pub fn from_symplectic(p: &SymplecticPair<S>) -> Self {
        Self::new(p.z.re.clone(), p.z.im.clone(), p.zeta.re.clone(), p.zeta.im.clone())
    }

    /// Product computed in symplectic form:
    /// `(z + ζj)(w0 + w1 j) = (w0 z − w̄1 ζ) + (w1 z + w̄0 ζ)j`.
    pub fn symplectic_product(&self, rhs: &Self) -> Self {
        let a = self.symplectic_split();
        let b = rhs.symplectic_split();
        let z = b.z.clone() * a.z.clone() - b.zeta.conj() * a.zeta.clone();
        let zeta = b.zeta * a.z + b.z.conj() * a.zeta;
        Self::from_symplectic(&SymplecticPair { z, zeta })
    }

    /// Real part of the quaternion.
    pub fn re(&self) -> S {
        self.x0.clone()
    }

    pub fn to_f64(&self) -> Quaternion<f64> {
        Quaternion::new(self.x0.to_f64(), self.x1.to_f64(), self.x2.to_f64(), self.x3.to_f64())
    }
}

impl Quaternion<f64> {
    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.is_finite())
    }
}

fn hamilton<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    let (a0, a1, a2, a3) = (&a.x0, &a.x1, &a.x2, &a.x3);
    let (b0, b1, b2, b3) = (&b.x0, &b.x1, &b.x2, &b.x3);
    let m = |x: &S, y: &S| x.clone() * y.clone();
    Quaternion::new(
        m(a0, b0) - m(a1, b1) - m(a2, b2) - m(a3, b3),
        m(a0, b1) + m(a1, b0) + m(a2, b3) - m(a3, b2),
        m(a0, b2) - m(a1, b3) + m(a2, b0) + m(a3, b1),
        m(a0, b3) + m(a1, b2) - m(a2, b1) + m(a3, b0),
    )
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<S: Scalar> $tr<&Quaternion<S>> for &Quaternion<S> {
            type Output = Quaternion<S>;
            fn $method(self, rhs: &Quaternion<S>) -> Quaternion<S> {
                $body(self, rhs)
            }
        }
        impl<S: Scalar> $tr<Quaternion<S>> for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $method(self, rhs: Quaternion<S>) -> Quaternion<S> {
                $body(&self, &rhs)
            }
        }
        impl<S: Scalar> $tr<&Quaternion<S>> for Quaternion<S> {
            type Output = Quaternion<S>;
            fn $method(self, rhs: &Quaternion<S>) -> Quaternion<S> {
                $body(&self, rhs)
            }
        }
        impl<S: Scalar> $tr<Quaternion<S>> for &Quaternion<S> {
            type Output = Quaternion<S>;
            fn $method(self, rhs: Quaternion<S>) -> Quaternion<S> {
                $body(self, &rhs)
            }
        }
    };
}

fn add<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    Quaternion::new(
        a.x0.clone() + b.x0.clone(),
        a.x1.clone() + b.x1.clone(),
        a.x2.clone() + b.x2.clone(),
        a.x3.clone() + b.x3.clone(),
    )
}

fn sub<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    Quaternion::new(
        a.x0.clone() - b.x0.clone(),
        a.x1.clone() - b.x1.clone(),
        a.x2.clone() - b.x2.clone(),
        a.x3.clone() - b.x3.clone(),
    )
}

impl_binop!(Add, add, add);
impl_binop!(Sub, sub, sub);
impl_binop!(Mul, mul, hamilton);

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        Quaternion::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl<S: Scalar> Neg for &Quaternion<S> {
    type Output = Quaternion<S>;
    fn neg(self) -> Quaternion<S> {
        -self.clone()
    }
}

/// Hamilton product.
pub fn mul<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    hamilton(a, b)
}

/// `Δ = |a|²|d|² + |b|²|c|² − 2 Re[a c̄ d b̄]`.
pub fn mobius_delta<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
) -> S {
    let cross = a * &c.conjugate() * d * b.conjugate();
    a.norm_sqr() * d.norm_sqr() + b.norm_sqr() * c.norm_sqr() - S::from_i64(2) * cross.re()
}

/// Quaternionic Möbius map `(aq + b)(cq + d)⁻¹`.
pub fn quat_mobius<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
    q: &Quaternion<S>,
) -> Result<Quaternion<S>, QuaternionError> {
    let delta = mobius_delta(a, b, c, d);
    let scale = a.norm_sqr() * d.norm_sqr() + b.norm_sqr() * c.norm_sqr() + S::one();
    if delta.is_zero() || S::is_negligible(&delta, &scale, 1e-10) {
        return Err(QuaternionError::DegenerateTransform { delta: delta.to_decimal_string() });
    }
    let den = c * q + d;
    let den_scale = c.norm_sqr() * q.norm_sqr() + d.norm_sqr();
    if den.is_zero() || S::is_negligible(&den.norm_sqr(), &den_scale, 1e-24) {
        return Err(QuaternionError::PoleAtPoint);
    }
    Ok((a * q + b) * den.inverse()?)
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [(&self.x0, ""), (&self.x1, "i"), (&self.x2, "j"), (&self.x3, "k")];
        let mut wrote = false;
        for (value, unit) in parts {
            if value.is_zero() {
                continue;
            }
            let text = value.to_decimal_string();
            let (sign, magnitude) = match text.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => ("+", text),
            };
            if wrote || sign == "-" {
                write!(f, "{sign}")?;
            }
            if unit.is_empty() || magnitude != "1" {
                write!(f, "{magnitude}")?;
            }
            write!(f, "{unit}")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<S: Scalar> Serialize for Quaternion<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Quaternion", 4)?;
        st.serialize_field("x0", &self.x0.to_decimal_string())?;
        st.serialize_field("x1", &self.x1.to_decimal_string())?;
        st.serialize_field("x2", &self.x2.to_decimal_string())?;
        st.serialize_field("x3", &self.x3.to_decimal_string())?;
        st.end()
    }
}

/// Scalars are written as decimal strings; bare JSON numbers are accepted on input.
#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarText {
    Text(String),
    Number(serde_json::Number),
}

impl ScalarText {
    fn parse<S: Scalar, E: serde::de::Error>(self) -> Result<S, E> {
        let text = match self {
            ScalarText::Text(t) => t,
            ScalarText::Number(n) => n.to_string(),
        };
        S::parse_decimal(&text).map_err(E::custom)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuaternionRepr {
    x0: ScalarText,
    x1: ScalarText,
    x2: ScalarText,
    x3: ScalarText,
}

impl<'de, S: Scalar> Deserialize<'de> for Quaternion<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = QuaternionRepr::deserialize(deserializer)?;
        let q = Quaternion::new(r.x0.parse()?, r.x1.parse()?, r.x2.parse()?, r.x3.parse()?);
        if !S::EXACT && !q.to_f64().is_finite() {
            return Err(D::Error::custom("non-finite quaternion component"));
        }
        Ok(q)
    }
}
