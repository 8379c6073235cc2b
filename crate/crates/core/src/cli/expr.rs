//! Quaternion expressions in `q` and `qbar`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | 'q' | 'qbar' | 'i' | 'j' | 'k' | '(' expr ')'
//! ```
//!
//! Products keep their written order; `a/b` means `a·b⁻¹`.

use std::fmt;

use thiserror::Error;

use crate::holomorphy::EvalError;
use crate::quaternion::Quaternion;

type Q = Quaternion<f64>;

#[derive(Clone, Debug, PartialEq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Q,
    QBar,
    Const(Q),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn eval(&self, q: &Q) -> Result<Q, EvalError> {
        Ok(match self {
            Expr::Q => q.clone(),
            Expr::QBar => q.conjugate(),
            Expr::Const(c) => c.clone(),
            Expr::Neg(a) => -a.eval(q)?,
            Expr::Add(a, b) => a.eval(q)? + b.eval(q)?,
            Expr::Sub(a, b) => a.eval(q)? - b.eval(q)?,
            Expr::Mul(a, b) => a.eval(q)? * b.eval(q)?,
            Expr::Div(a, b) => {
                let inv = b.eval(q)?.inverse().map_err(|_| EvalError(format!("division by zero at {q}")))?;
                a.eval(q)? * inv
            }
            Expr::Pow(a, n) => {
                let base = a.eval(q)?;
                (0..*n).fold(Q::one(), |acc, _| acc * &base)
            }
        })
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Q | Expr::QBar => false,
            Expr::Const(_) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_constant() && b.is_constant()
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Q => write!(f, "q"),
            Expr::QBar => write!(f, "qbar"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => write!(f, "({a})^{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut k = i + 1;
                if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                    k += 1;
                }
                if k < chars.len() && chars[k].is_ascii_digit() {
                    i = k;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v: f64 = s.parse().map_err(|_| ParseError {
                column: start + 1,
                message: format!("invalid number '{s}'"),
            })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((start, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseError { column: start + 1, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0) + 1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.column(), message: message.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            return match self.peek() {
                Some(Tok::Num(n)) if n.fract() == 0.0 && *n >= 0.0 && *n <= 64.0 => {
                    let n = *n as u32;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), n))
                }
                _ => self.error("expected an integer exponent between 0 and 64"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        let expr = match tok {
            Tok::Num(v) => Expr::Const(Q::real(v)),
            Tok::Ident(name) => match name.as_str() {
                "q" => Expr::Q,
                "qbar" => Expr::QBar,
                "i" => Expr::Const(Q::i()),
                "j" => Expr::Const(Q::j()),
                "k" => Expr::Const(Q::k()),
                _ => return self.error(format!("unknown identifier '{name}'")),
            },
            Tok::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                return Ok(inner);
            }
            Tok::Op(c) => return self.error(format!("unexpected '{c}'")),
        };
        self.pos += 1;
        Ok(expr)
    }
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.chars().count() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(text: &str, q: &Q) -> Q {
        parse(text).unwrap().eval(q).unwrap()
    }

    #[test]
    fn order_is_preserved() {
        let q = Q::j();
        assert_eq!(at("q*i", &q), Q::j() * Q::i());
        assert_eq!(at("i*q", &q), Q::i() * Q::j());
        assert_ne!(at("q*i", &q), at("i*q", &q));
    }

    #[test]
    fn precedence_and_literals() {
        let q = Q::new(1.0, 2.0, 0.0, 0.0);
        assert_eq!(at("q*i + j", &q), q.clone() * Q::i() + Q::j());
        assert_eq!(at("-q^2", &q), -(q.clone() * q.clone()));
        assert_eq!(at("1/2*qbar", &q), q.conjugate().scale(&0.5));
        assert_eq!(at("2.5e1", &q), Q::real(25.0));
        assert_eq!(at("(q - 1)*(q + 1)", &q), (q.clone() - Q::one()) * (q.clone() + Q::one()));
        assert!(parse("1 + k").unwrap().is_constant());
        assert!(!parse("q*q").unwrap().is_constant());
    }

    #[test]
    fn errors_report_columns() {
        assert_eq!(parse("q * ").unwrap_err().column, 5);
        assert_eq!(parse("q $ 1").unwrap_err().column, 3);
        assert_eq!(parse("q + w").unwrap_err().column, 5);
        assert_eq!(parse("(q").unwrap_err().column, 3);
        assert_eq!(parse("q q").unwrap_err().column, 3);
        assert!(parse("q^1.5").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn division_by_zero_is_an_eval_error() {
        let e = parse("1/q").unwrap();
        assert!(e.eval(&Q::zero()).is_err());
        assert_eq!(e.eval(&Q::i()).unwrap(), -Q::i());
    }
}
