//! Polynomials in `z, z̄, ζ, ζ̄` with Gaussian-rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::GaussianRational;

/// The four complex coordinates, treated as independent variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    Z,
    ZBar,
    Zeta,
    ZetaBar,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z, Var::ZBar, Var::Zeta, Var::ZetaBar];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::ZBar => "zbar",
            Var::Zeta => "zeta",
            Var::ZetaBar => "zetabar",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// Exponent vector `(e_z, e_z̄, e_ζ, e_ζ̄)`, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; 4])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.degree() == 0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", v.name())?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(v))
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// `∂p/∂v`.
    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut lowered = m.0;
            lowered[v.index()] -= 1;
            out.add_term(Monomial(lowered), &(c * &GaussianRational::real(e as i64)));
        }
        out
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&GaussianRational::real(-1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, "+")?;
            }
            match (c.is_one(), m.is_one()) {
                (true, false) => write!(f, "{m}")?,
                (_, true) => write!(f, "{}", coefficient_text(c))?,
                (false, false) => write!(f, "{}*{m}", coefficient_text(c))?,
            }
        }
        Ok(())
    }
}

/// Coefficient text usable as a factor: compound values are parenthesised.
pub(crate) fn coefficient_text(c: &GaussianRational) -> String {
    let s = c.to_string();
    if !c.re.is_zero() && !c.im.is_zero() {
        format!("({s})")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_powers() {
        let z = Polynomial::var(Var::Z);
        let z2 = &z * &z;
        assert_eq!(z2.derivative(Var::Z), z.scale(&GaussianRational::real(2)));
        assert!(z2.derivative(Var::ZBar).is_zero());
        assert!(Polynomial::one().derivative(Var::Zeta).is_zero());
    }

    #[test]
    fn cancellation_prunes_terms() {
        let z = Polynomial::var(Var::Z);
        assert!((&z - &z).is_zero());
        assert_eq!((&z - &z).degree(), None);
    }

    #[test]
    fn graded_ordering() {
        let mut ms = [Monomial([2, 0, 0, 0]), Monomial::one(), Monomial([0, 0, 1, 0]), Monomial([1, 0, 0, 0])];
        ms.sort();
        assert_eq!(ms[0], Monomial::one());
        assert_eq!(ms[1], Monomial([1, 0, 0, 0]));
        assert_eq!(ms[2], Monomial([0, 0, 1, 0]));
        assert_eq!(ms[3], Monomial([2, 0, 0, 0]));
    }

    #[test]
    fn display() {
        let p = &Polynomial::var(Var::Z) * &Polynomial::var(Var::Zeta);
        assert_eq!(p.to_string(), "z*zeta");
        let q = &p.scale(&GaussianRational::from_i64(1, 1)) + &Polynomial::constant(GaussianRational::real(-2));
        assert_eq!(q.to_string(), "(1+i)*z*zeta+-2");
    }
}
