//! Recursive-descent reader for polynomial equations.
//!
//! Grammar, whitespace ignored:
//!
//! ```text
//! equation := expr ("=" expr)?
//! expr     := ("+" | "-")? term (("+" | "-") term)*
//! term     := power ("*"? power)*
//! power    := atom ("^" digits | superscript digits)?
//! atom     := digits | variable | "(" expr ")"
//! variable := "x" | "y" | "z" | "x" digits
//! ```
//!
//! Juxtaposition multiplies, so `3xy^2` and `(3x-1)y^2` are accepted.
//! Single-letter and indexed variable names cannot be mixed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::catalog::equation::{CubicEquation, Monomial};
use crate::error::{Error, Result};

type Exponents = Vec<(usize, u32)>;

#[derive(Clone, Debug, Default, PartialEq)]
struct Poly(BTreeMap<Exponents, BigInt>);

impl Poly {
    fn constant(c: BigInt) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.0.insert(Vec::new(), c);
        }
        p
    }

    fn variable(v: usize) -> Self {
        let mut p = Poly::default();
        p.0.insert(vec![(v, 1)], BigInt::one());
        p
    }

    fn add_term(&mut self, k: Exponents, c: BigInt) {
        let slot = self.0.entry(k.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    fn add(mut self, other: Poly, negate: bool) -> Poly {
        for (k, c) in other.0 {
            self.add_term(k, if negate { -c } else { c });
        }
        self
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &other.0 {
                let mut e: BTreeMap<usize, u32> = k1.iter().copied().collect();
                for &(v, x) in k2 {
                    *e.entry(v).or_default() += x;
                }
                out.add_term(e.into_iter().collect(), c1 * c2);
            }
        }
        out
    }

    fn degree(&self) -> u32 {
        self.0
            .keys()
            .map(|k| k.iter().map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }
}

/// Variable naming style seen so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Naming {
    Letters,
    Indexed,
}

/// Terms that collided while summing the top-level terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseNotes {
    /// Monomials written more than once whose coefficients were added.
    pub merged: usize,
    /// Monomials whose coefficients summed to zero and were dropped.
    pub cancelled: usize,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    naming: Option<Naming>,
    notes: ParseNotes,
}

/// Largest exponent accepted syntactically; degrees above 3 are rejected
/// later with [`Error::Degree`].
const MAX_EXPONENT: u32 = 64;

fn superscript_digit(c: char) -> Option<u32> {
    match c {
        '⁰' => Some(0),
        '¹' => Some(1),
        '²' => Some(2),
        '³' => Some(3),
        '⁴' => Some(4),
        '⁵' => Some(5),
        '⁶' => Some(6),
        '⁷' => Some(7),
        '⁸' => Some(8),
        '⁹' => Some(9),
        _ => None,
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            naming: None,
            notes: ParseNotes::default(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(false)
            }
            Some('-') | Some('−') => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn equation(&mut self) -> Result<Poly> {
        let lhs = self.expr(true)?;
        let p = if self.peek() == Some('=') {
            self.bump();
            let rhs = self.expr(true)?;
            self.sum_top(lhs, rhs, true)
        } else {
            lhs
        };
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected `{c}`"));
        }
        Ok(p)
    }

    fn sum_top(&mut self, mut acc: Poly, other: Poly, negate: bool) -> Poly {
        for (k, c) in other.0 {
            if let Some(prev) = acc.0.get(&k) {
                self.notes.merged += 1;
                let total = if negate { prev - &c } else { prev + &c };
                if total.is_zero() {
                    self.notes.cancelled += 1;
                }
            }
            acc.add_term(k, if negate { -c } else { c });
        }
        acc
    }

    fn expr(&mut self, top: bool) -> Result<Poly> {
        let mut negate = self.sign().unwrap_or(false);
        let mut acc = Poly::default();
        loop {
            let t = self.term()?;
            acc = if top {
                self.sum_top(acc, t, negate)
            } else {
                acc.add(t, negate)
            };
            match self.sign() {
                Some(n) => negate = n,
                None => return Ok(acc),
            }
        }
    }

    fn starts_atom(c: char) -> bool {
        c.is_ascii_digit() || c == '(' || matches!(c, 'x' | 'y' | 'z')
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let p = self.power()?;
                    acc = acc.mul(&p);
                }
                Some(c) if Self::starts_atom(c) => {
                    let p = self.power()?;
                    acc = acc.mul(&p);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        let exp = if self.peek() == Some('^') {
            self.bump();
            let d = self.digits();
            if d.is_empty() {
                return self.err("expected exponent after `^`");
            }
            d.parse::<u32>().ok()
        } else {
            let mut e: Option<u32> = None;
            while let Some(c) = self.src[self.pos..].chars().next() {
                let Some(d) = superscript_digit(c) else { break };
                self.pos += c.len_utf8();
                e = Some(e.unwrap_or(0).saturating_mul(10).saturating_add(d));
            }
            match e {
                Some(e) => Some(e),
                None => return Ok(base),
            }
        };
        let exp = match exp {
            Some(e) if e <= MAX_EXPONENT => e,
            _ => return self.err("exponent too large"),
        };
        let mut out = Poly::constant(BigInt::one());
        for _ in 0..exp {
            out = out.mul(&base);
            if out.degree() > MAX_EXPONENT {
                return self.err("exponent too large");
            }
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr(false)?;
                if self.bump() != Some(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(Poly::constant(d.parse::<BigInt>().expect("ascii digits")))
            }
            Some(c @ ('x' | 'y' | 'z')) => {
                self.bump();
                let idx = if c == 'x' {
                    let d = self.src[self.pos..]
                        .find(|ch: char| !ch.is_ascii_digit())
                        .map(|n| &self.src[self.pos..self.pos + n])
                        .unwrap_or(&self.src[self.pos..]);
                    if d.is_empty() {
                        None
                    } else {
                        self.pos += d.len();
                        match d.parse::<usize>() {
                            Ok(i) if (1..=254).contains(&i) => Some(i - 1),
                            _ => return self.err("variable index must be between 1 and 254"),
                        }
                    }
                } else {
                    None
                };
                let (naming, var) = match idx {
                    Some(i) => (Naming::Indexed, i),
                    None => (Naming::Letters, (c as u8 - b'x') as usize),
                };
                if self.naming.is_some_and(|n| n != naming) {
                    return self.err("cannot mix x, y, z with indexed variables");
                }
                self.naming = Some(naming);
                Ok(Poly::variable(var))
            }
            Some(c) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn build(p: Poly) -> Result<CubicEquation> {
    let monomials =
        p.0.into_iter()
            .map(|(k, c)| Monomial::new(c, k.into_iter().collect()))
            .collect();
    CubicEquation::new(monomials)
}

/// Parses `text` into reduced form. Terms are expanded, the right-hand side
/// of `=` is moved left, and repeated monomials are merged.
pub fn parse_equation(text: &str) -> Result<CubicEquation> {
    parse_equation_with_notes(text).map(|(eq, _)| eq)
}

/// As [`parse_equation`], also reporting merged and cancelled terms.
pub fn parse_equation_with_notes(text: &str) -> Result<(CubicEquation, ParseNotes)> {
    let mut parser = Parser::new(text);
    let poly = parser.equation()?;
    let notes = parser.notes;
    Ok((build(poly)?, notes))
}
