//! Recursive-descent parser for polynomial expressions and exact weights.
//!
//! Polynomials: `+ - * / ^`, parentheses, integer and rational literals, the
//! imaginary unit `i`, declared variables and integer parameters. Division is
//! only by nonzero constants; exponents are nonnegative integers or parameters.
//! Weights: the same arithmetic over `Q(sqrt(D))` with `sqrt(n)` literals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::exactnum::{ExactError, GaussRat, QuadExt};
use crate::wpoly::WPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("division by a non-constant at position {pos}")]
    NonConstantDivisor { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("incompatible square roots at position {pos}")]
    IncompatibleField { pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|p| p.1).collect();
            out.push((Tok::Num(text.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().map(|p| p.1).collect()), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            k += 1;
        } else {
            return Err(ExprError::Syntax {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Cursor {
    fn new(s: &str) -> Result<Self, ExprError> {
        Ok(Cursor {
            toks: tokenize(s)?,
            at: 0,
            end: s.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<(), ExprError> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{op}`")))
        }
    }

    fn error(&self, msg: String) -> ExprError {
        ExprError::Syntax { pos: self.pos(), msg }
    }

    fn finish(&self) -> Result<(), ExprError> {
        if self.at < self.toks.len() {
            Err(self.error("unexpected trailing input".into()))
        } else {
            Ok(())
        }
    }
}

struct PolyParser<'a> {
    cur: Cursor,
    vars: &'a [String],
    params: &'a [(String, i64)],
}

impl PolyParser<'_> {
    fn dim(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<WPoly, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.cur.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.cur.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WPoly, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.cur.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.cur.peek() == Some(&Tok::Op('/')) {
                let pos = self.cur.pos();
                self.cur.at += 1;
                let d = self.unary()?;
                let c = d.as_constant().ok_or(ExprError::NonConstantDivisor { pos })?;
                let inv = c.inv().map_err(|_| ExprError::DivisionByZero { pos })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<WPoly, ExprError> {
        if self.cur.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.cur.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<WPoly, ExprError> {
        let base = self.atom()?;
        if !self.cur.eat('^') {
            return Ok(base);
        }
        let pos = self.cur.pos();
        let negative = self.cur.eat('-');
        let e = match self.cur.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.cur.at += 1;
                n
            }
            Some(Tok::Ident(name)) => match self.param(&name) {
                Some(v) => {
                    self.cur.at += 1;
                    BigInt::from(v)
                }
                None => return Err(self.cur.error(format!("`{name}` is not an integer parameter"))),
            },
            _ => return Err(self.cur.error("expected an exponent".into())),
        };
        let e = if negative { -e } else { e };
        if e.is_negative() {
            return Err(ExprError::NegativeExponent { pos });
        }
        let e: u32 = e.try_into().map_err(|_| ExprError::Syntax {
            pos,
            msg: "exponent too large".into(),
        })?;
        Ok(base.pow(e))
    }

    fn param(&self, name: &str) -> Option<i64> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    fn atom(&mut self) -> Result<WPoly, ExprError> {
        let pos = self.cur.pos();
        match self.cur.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.cur.at += 1;
                Ok(WPoly::constant(self.dim(), GaussRat::real(BigRational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.cur.at += 1;
                if let Some(j) = self.vars.iter().position(|v| *v == name) {
                    Ok(WPoly::var(self.dim(), j))
                } else if let Some(v) = self.param(&name) {
                    Ok(WPoly::constant(self.dim(), GaussRat::from_int(v)))
                } else if name == "i" {
                    Ok(WPoly::constant(self.dim(), GaussRat::i()))
                } else {
                    Err(ExprError::UnknownVariable { name, pos })
                }
            }
            Some(Tok::Op('(')) => {
                self.cur.at += 1;
                let e = self.expr()?;
                self.cur.expect(')')?;
                Ok(e)
            }
            _ => Err(self.cur.error("expected a number, variable or `(`".into())),
        }
    }
}

pub fn parse_expression(s: &str, vars: &[String]) -> Result<WPoly, ExprError> {
    parse_with_params(s, vars, &[])
}

/// As [`parse_expression`], with named integer parameters usable as constants and exponents.
pub fn parse_with_params(s: &str, vars: &[String], params: &[(String, i64)]) -> Result<WPoly, ExprError> {
    let mut p = PolyParser {
        cur: Cursor::new(s)?,
        vars,
        params,
    };
    let out = p.expr()?;
    p.cur.finish()?;
    Ok(out)
}

struct QuadParser {
    cur: Cursor,
}

impl QuadParser {
    fn lift(&self, pos: usize, r: Result<QuadExt, ExactError>) -> Result<QuadExt, ExprError> {
        r.map_err(|e| match e {
            ExactError::DivisionByZero => ExprError::DivisionByZero { pos },
            ExactError::IncompatibleField { .. } => ExprError::IncompatibleField { pos },
        })
    }

    fn expr(&mut self) -> Result<QuadExt, ExprError> {
        let mut acc = self.term()?;
        loop {
            let pos = self.cur.pos();
            if self.cur.eat('+') {
                let t = self.term()?;
                acc = self.lift(pos, acc.try_add(&t))?;
            } else if self.cur.eat('-') {
                let t = self.term()?;
                acc = self.lift(pos, acc.try_sub(&t))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QuadExt, ExprError> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.cur.pos();
            if self.cur.eat('*') {
                let t = self.unary()?;
                acc = self.lift(pos, acc.try_mul(&t))?;
            } else if self.cur.eat('/') {
                let t = self.unary()?;
                acc = self.lift(pos, acc.try_div(&t))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QuadExt, ExprError> {
        if self.cur.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.cur.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<QuadExt, ExprError> {
        match self.cur.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.cur.at += 1;
                Ok(QuadExt::from_rational(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.cur.at += 1;
                self.cur.expect('(')?;
                let pos = self.cur.pos();
                let Some(Tok::Num(n)) = self.cur.peek().cloned() else {
                    return Err(self.cur.error("sqrt takes a nonnegative integer".into()));
                };
                self.cur.at += 1;
                self.cur.expect(')')?;
                let d: u64 = n.try_into().map_err(|_| ExprError::Syntax {
                    pos,
                    msg: "radicand too large".into(),
                })?;
                Ok(QuadExt::sqrt(d))
            }
            Some(Tok::Op('(')) => {
                self.cur.at += 1;
                let e = self.expr()?;
                self.cur.expect(')')?;
                Ok(e)
            }
            _ => Err(self.cur.error("expected a number, `sqrt(n)` or `(`".into())),
        }
    }
}

/// Parses an exact element of `Q(sqrt(D))`, e.g. `(3 + sqrt(3))/2`.
pub fn parse_quadext(s: &str) -> Result<QuadExt, ExprError> {
    let mut p = QuadParser { cur: Cursor::new(s)? };
    let out = p.expr()?;
    p.cur.finish()?;
    Ok(out)
}

/// Parses a rational number such as `-3/4`.
pub fn parse_rational(s: &str) -> Result<BigRational, ExprError> {
    let q = parse_quadext(s)?;
    match q.to_rational() {
        Some(r) => Ok(r.clone()),
        None => Err(ExprError::Syntax {
            pos: 0,
            msg: format!("`{s}` is not rational"),
        }),
    }
}
