//! Canonical ASCII grammar for scalars, polynomials, rational functions and
//! differential forms.
//!
//! Expressions use `+ - * / ^` with parentheses, rational literals `p/q`,
//! variables `x0..x15` and the extension generator `t`. Forms are sums of
//! `(coefficient) dxi^dxj^...` terms. Printing (the `Display` impls across
//! the crate) always produces a string this module parses back to the same
//! value.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ratfun::RationalFunction;
use crate::scalar::{Field, Rat, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Dx(usize),
    Gen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits");
                toks.push((start, Tok::Num(n)));
            }
            b't' => {
                toks.push((i, Tok::Gen));
                i += 1;
            }
            b'x' | b'd' => {
                let start = i;
                let is_dx = c == b'd';
                if is_dx {
                    i += 1;
                    if i >= bytes.len() || bytes[i] != b'x' {
                        return Err(err(start, "expected 'dx' followed by a variable index"));
                    }
                }
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(err(start, "expected a variable index after 'x'"));
                }
                let idx: usize = s[digits_start..i]
                    .parse()
                    .map_err(|_| err(start, "variable index out of range"))?;
                if idx >= crate::poly::MAX_VARS {
                    return Err(err(start, format!("variable index {idx} exceeds x15")));
                }
                toks.push((start, if is_dx { Tok::Dx(idx) } else { Tok::Var(idx) }));
            }
            _ => return Err(err(i, format!("unexpected character '{}'", c as char))),
        }
    }
    Ok(toks)
}

struct ExprParser<'a> {
    lx: Lexer,
    field: &'a Field,
    nvars: usize,
    /// Treat `t` as a polynomial variable (used when reading a minimal
    /// polynomial before its field exists). The variable is mapped to x0.
    t_as_var: bool,
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }
    fn peek_pos(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }
    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

impl<'a> ExprParser<'a> {
    fn rf(&self, p: MultiPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.lx.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.lx.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.lx.eat(&Tok::Star) {
                acc = acc.mul(&self.unary()?);
            } else if self.lx.eat(&Tok::Slash) {
                let pos = self.lx.peek_pos();
                let d = self.unary()?;
                acc = acc
                    .div(&d)
                    .map_err(|_| err(pos, "division by zero in expression"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        let mut negate = false;
        loop {
            if self.lx.eat(&Tok::Minus) {
                negate = !negate;
            } else if self.lx.eat(&Tok::Plus) {
            } else {
                break;
            }
        }
        let a = self.atom()?;
        Ok(if negate { a.neg() } else { a })
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let pos = self.lx.peek_pos();
        let base = match self.lx.next() {
            Some(Tok::Num(n)) => self.rf(MultiPoly::constant(
                self.field.clone(),
                self.nvars,
                Scalar::from_rat(self.field.clone(), Rat::from(n)),
            )),
            Some(Tok::Var(i)) => {
                if i >= self.nvars {
                    return Err(err(pos, format!("variable x{i} exceeds the declared count")));
                }
                self.rf(MultiPoly::var(self.field.clone(), self.nvars, i))
            }
            Some(Tok::Gen) => {
                if self.t_as_var {
                    self.rf(MultiPoly::var(self.field.clone(), self.nvars, 0))
                } else {
                    let g = self
                        .field
                        .generator()
                        .map_err(|_| err(pos, "generator 't' used over the rationals"))?;
                    self.rf(MultiPoly::constant(self.field.clone(), self.nvars, g))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if !self.lx.eat(&Tok::RParen) {
                    return Err(err(self.lx.peek_pos(), "expected ')'"));
                }
                inner
            }
            Some(tok) => return Err(err(pos, format!("unexpected token {tok:?}"))),
            None => return Err(err(pos, "unexpected end of input")),
        };
        if self.lx.eat(&Tok::Caret) {
            let pos = self.lx.peek_pos();
            match self.lx.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(pos, "exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err(pos, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }
}

fn full_expr(s: &str, field: &Field, nvars: usize, t_as_var: bool) -> Result<RationalFunction> {
    let toks = lex(s)?;
    let mut p = ExprParser {
        lx: Lexer {
            toks,
            pos: 0,
            len: s.len(),
        },
        field,
        nvars,
        t_as_var,
    };
    let v = p.expr()?;
    if p.lx.peek().is_some() {
        return Err(err(p.lx.peek_pos(), "trailing input"));
    }
    Ok(v)
}

pub fn parse_ratfun(s: &str, field: &Field, nvars: usize) -> Result<RationalFunction> {
    full_expr(s, field, nvars, false)
}

pub fn parse_poly(s: &str, field: &Field, nvars: usize) -> Result<MultiPoly> {
    let v = full_expr(s, field, nvars, false)?;
    v.as_poly()
        .ok_or_else(|| err(0, "expression is not a polynomial"))
}

pub fn parse_scalar(s: &str, field: &Field) -> Result<Scalar> {
    let p = parse_poly(s, field, 0)?;
    Ok(p.constant_value().expect("0-variable polynomial is constant"))
}

/// Minimal polynomial in `t` with rational coefficients, constant term first.
pub fn parse_min_poly(s: &str) -> Result<Vec<Rat>> {
    let q = Field::rationals();
    let v = full_expr(s, &q, 1, true)?;
    let p = v
        .as_poly()
        .ok_or_else(|| err(0, "minimal polynomial must be polynomial in t"))?;
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.0[0] as usize] = c.as_rational().expect("rational base field").clone();
    }
    Ok(coeffs)
}

use crate::forms::DiffForm;
use num_traits::Zero;

/// Forms: `0`, a bare rational-function expression (degree 0), or a sum of
/// `(coeff) dxi^dxj^...` terms.
pub fn parse_form(s: &str, field: &Field, nvars: usize) -> Result<DiffForm> {
    let toks = lex(s)?;
    if !toks.iter().any(|(_, t)| matches!(t, Tok::Dx(_))) {
        let rf = parse_ratfun(s, field, nvars)?;
        return Ok(DiffForm::from_ratfun(nvars, rf));
    }
    let mut p = ExprParser {
        lx: Lexer {
            toks,
            pos: 0,
            len: s.len(),
        },
        field,
        nvars,
        t_as_var: false,
    };
    let mut form: Option<DiffForm> = None;
    loop {
        let mut negate = false;
        loop {
            if p.lx.eat(&Tok::Minus) {
                negate = !negate;
            } else if p.lx.eat(&Tok::Plus) {
            } else {
                break;
            }
        }
        // Coefficient: parenthesized expression, or implicit 1 before dx.
        let coeff = if matches!(p.lx.peek(), Some(Tok::Dx(_))) {
            RationalFunction::one(field.clone(), nvars)
        } else {
            let pos = p.lx.peek_pos();
            if !p.lx.eat(&Tok::LParen) {
                return Err(err(pos, "expected '(' before form coefficient"));
            }
            let c = p.expr()?;
            if !p.lx.eat(&Tok::RParen) {
                return Err(err(p.lx.peek_pos(), "expected ')' after form coefficient"));
            }
            c
        };
        let coeff = if negate { coeff.neg() } else { coeff };
        let mut indices = Vec::new();
        while let Some(Tok::Dx(i)) = p.lx.peek() {
            let i = *i;
            p.lx.next();
            if i >= nvars {
                return Err(err(0, format!("dx{i} exceeds the declared variable count")));
            }
            indices.push(i as u8);
            if !p.lx.eat(&Tok::Caret) {
                break;
            }
        }
        let term = DiffForm::monomial(field.clone(), nvars, &indices, coeff)?;
        form = Some(match form {
            None => term,
            Some(f) => f.add(&term),
        });
        if p.lx.peek().is_none() {
            break;
        }
        if !matches!(p.lx.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            return Err(err(p.lx.peek_pos(), "expected '+' or '-' between form terms"));
        }
    }
    Ok(form.expect("at least one term parsed"))
}
