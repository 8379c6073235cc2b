//! First-order differential operators `Σᵥ pᵥ ∂ᵥ` with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use super::poly::{coefficient_text, Monomial, Polynomial, Var};
use super::GaussianRational;
use crate::linalg::SparseVector;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffOperator {
    terms: BTreeMap<Var, Polynomial>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `∂ᵥ`.
    pub fn partial(v: Var) -> Self {
        Self::with_coefficient(Polynomial::one(), v)
    }

    /// `p ∂ᵥ`.
    pub fn with_coefficient(p: Polynomial, v: Var) -> Self {
        let mut op = Self::zero();
        op.add_to(v, &p);
        op
    }

    /// `w ∂ᵥ` for a coordinate `w`.
    pub fn linear(w: Var, v: Var) -> Self {
        Self::with_coefficient(Polynomial::var(w), v)
    }

    fn add_to(&mut self, v: Var, p: &Polynomial) {
        let sum = match self.terms.get(&v) {
            Some(existing) => existing + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&v);
        } else {
            self.terms.insert(v, sum);
        }
    }

    pub fn coefficient(&self, v: Var) -> Polynomial {
        self.terms.get(&v).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (v, p) in &self.terms {
            out.add_to(*v, &p.scale(c));
        }
        out
    }

    /// `Σᵥ pᵥ ∂p/∂v`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        self.terms
            .iter()
            .fold(Polynomial::zero(), |acc, (v, coeff)| &acc + &(coeff * &p.derivative(*v)))
    }

    /// Coordinates keyed by `(∂-variable, monomial)`, for span computations.
    pub fn coordinates(&self) -> SparseVector<(Var, Monomial)> {
        self.terms
            .iter()
            .flat_map(|(v, p)| p.terms().map(move |(m, c)| ((*v, *m), c.clone())))
            .collect()
    }

    pub fn linear_combination(ops: &[DiffOperator], coeffs: &[GaussianRational]) -> Self {
        ops.iter().zip(coeffs).fold(Self::zero(), |acc, (op, c)| &acc + &op.scale(c))
    }
}

impl Add<&DiffOperator> for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        for (v, p) in &rhs.terms {
            out.add_to(*v, p);
        }
        out
    }
}

impl Sub<&DiffOperator> for &DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self + &-rhs
    }
}

impl Add for DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: DiffOperator) -> DiffOperator {
        &self + &rhs
    }
}

impl Sub for DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: DiffOperator) -> DiffOperator {
        &self - &rhs
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        self.scale(&GaussianRational::real(-1))
    }
}

impl Neg for DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        -&self
    }
}

/// An operator of order at most two, `Σ pᵥ∂ᵥ + Σ_{u≤v} p_{uv} ∂ᵤ∂ᵥ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SecondOrderOperator {
    pub first: DiffOperator,
    pub second: BTreeMap<(Var, Var), Polynomial>,
}

impl SecondOrderOperator {
    fn add_second(&mut self, u: Var, v: Var, p: &Polynomial) {
        let key = if u <= v { (u, v) } else { (v, u) };
        let sum = match self.second.get(&key) {
            Some(existing) => existing + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.second.remove(&key);
        } else {
            self.second.insert(key, sum);
        }
    }

    pub fn is_first_order(&self) -> bool {
        self.second.is_empty()
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = self.first.apply(p);
        for ((u, v), coeff) in &self.second {
            out = &out + &(coeff * &p.derivative(*u).derivative(*v));
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = Self { first: &self.first - &rhs.first, second: self.second.clone() };
        for ((u, v), p) in &rhs.second {
            out.add_second(*u, *v, &-p);
        }
        out
    }
}

/// `A∘B = Σᵥ A(bᵥ)∂ᵥ + Σ_{u,v} aᵤ bᵥ ∂ᵤ∂ᵥ`.
pub fn compose(a: &DiffOperator, b: &DiffOperator) -> SecondOrderOperator {
    let mut out = SecondOrderOperator::default();
    for (v, bv) in &b.terms {
        out.first.add_to(*v, &a.apply(bv));
    }
    for (u, au) in &a.terms {
        for (v, bv) in &b.terms {
            out.add_second(*u, *v, &(au * bv));
        }
    }
    out
}

/// `A∘B − B∘A` including its (vanishing) second-order part.
pub fn commutator_full(a: &DiffOperator, b: &DiffOperator) -> SecondOrderOperator {
    compose(a, b).sub(&compose(b, a))
}

/// `[A, B] f = A(B f) − B(A f)`.
pub fn commutator(a: &DiffOperator, b: &DiffOperator) -> DiffOperator {
    let full = commutator_full(a, b);
    assert!(full.is_first_order(), "commutator of first-order operators left a second-order part");
    full.first
}

/// Text form: `z*dz+-1*dzeta+i*zbar*dz`; the coefficient is omitted when it is 1.
impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, p) in &self.terms {
            for (m, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                if !c.is_one() {
                    write!(f, "{}*", coefficient_text(c))?;
                }
                if !m.is_one() {
                    write!(f, "{m}*")?;
                }
                write!(f, "d{}", v.name())?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid operator text `{text}`: {reason}")]
pub struct ParseOperatorError {
    pub text: String,
    pub reason: String,
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (pos, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..pos]);
                start = pos + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for DiffOperator {
    type Err = ParseOperatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ParseOperatorError { text: s.to_string(), reason: reason.to_string() };
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text == "0" {
            return Ok(DiffOperator::zero());
        }
        let mut op = DiffOperator::zero();
        for term in split_top_level(&text, '+') {
            let (negate, body) = match term.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, term),
            };
            let factors = split_top_level(body, '*');
            let (last, rest) = factors.split_last().ok_or_else(|| fail("empty term"))?;
            let var = last
                .strip_prefix('d')
                .and_then(Var::from_name)
                .ok_or_else(|| fail("each term must end in a derivative such as `dz`"))?;
            let mut coeff = if negate { GaussianRational::real(-1) } else { GaussianRational::one() };
            let mut mono = Monomial::one();
            for factor in rest {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| fail("bad exponent"))?),
                    None => (*factor, 1),
                };
                if let Some(v) = Var::from_name(base) {
                    for _ in 0..exp {
                        mono = mono * Monomial::var(v);
                    }
                } else {
                    let inner = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(base);
                    let c: GaussianRational = inner.parse().map_err(|_| fail("bad coefficient"))?;
                    for _ in 0..exp {
                        coeff = &coeff * &c;
                    }
                }
            }
            op.add_to(var, &Polynomial::term(coeff, mono));
        }
        Ok(op)
    }
}
