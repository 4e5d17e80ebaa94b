//! Recursive-descent parser shared by polynomials and exterior forms.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ("*" factor)*
//! factor := int ["/" int] | "X" idx ["^" int] | "dX" idx ("^" "dX" idx)* | "(" expr ")"
//! ```
//! Whitespace is insignificant. A term may hold at most one wedge chain.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{Monomial, Polynomial, Rational};
use crate::{Error, Result};

/// Sorted basis tuple -> coefficient. The empty tuple holds the 0-form part.
pub(crate) type RawForm = BTreeMap<Vec<usize>, Polynomial>;

pub(crate) fn parse_polynomial(text: &str, nvars: usize, base: usize) -> Result<Polynomial> {
    let form = parse_raw_form(text, nvars, base)?;
    let mut out = Polynomial::zero(nvars);
    for (tuple, coeff) in form {
        if !tuple.is_empty() {
            return Err(Error::Syntax {
                pos: 0,
                msg: String::from("differentials are not allowed in a polynomial"),
            });
        }
        out += &coeff;
    }
    Ok(out)
}

pub(crate) fn parse_raw_form(text: &str, nvars: usize, base: usize) -> Result<RawForm> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        base,
    };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    base: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: String::from(msg),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RawForm> {
        let mut acc = RawForm::new();
        let mut sign = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                1
            }
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            _ => 1,
        };
        loop {
            let term = self.term()?;
            for (tuple, coeff) in term {
                let entry = acc
                    .entry(tuple)
                    .or_insert_with(|| Polynomial::zero(self.nvars));
                if sign > 0 {
                    *entry += &coeff;
                } else {
                    *entry -= &coeff;
                }
            }
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => break,
            };
            self.pos += 1;
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(acc)
    }

    fn term(&mut self) -> Result<RawForm> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = self.product(acc, rhs)?;
        }
        Ok(acc)
    }

    fn product(&self, a: RawForm, b: RawForm) -> Result<RawForm> {
        let a_has_forms = a.keys().any(|k| !k.is_empty());
        let b_has_forms = b.keys().any(|k| !k.is_empty());
        if a_has_forms && b_has_forms {
            return Err(self.error("use ^ to wedge differentials"));
        }
        let mut out = RawForm::new();
        for (ta, ca) in &a {
            for (tb, cb) in &b {
                let key = if ta.is_empty() {
                    tb.clone()
                } else {
                    ta.clone()
                };
                let e = out
                    .entry(key)
                    .or_insert_with(|| Polynomial::zero(self.nvars));
                *e += &(ca * cb);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn factor(&mut self) -> Result<RawForm> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'X') => {
                self.pos += 1;
                let slot = self.variable()?;
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let start = self.pos;
                    let e = self.unsigned()?;
                    exp = u32::try_from(&e)
                        .ok()
                        .filter(|&e| e > 0)
                        .ok_or(Error::Syntax {
                            pos: start,
                            msg: String::from("exponent must be a positive integer"),
                        })?;
                }
                let mut exps = vec![0u32; self.nvars];
                exps[slot] = exp;
                Ok(poly_form(Polynomial::term(
                    Monomial::from_exponents(exps),
                    Rational::one(),
                )))
            }
            Some(b'd') => self.wedge_chain(),
            Some(c) if c.is_ascii_digit() => {
                let numer = self.unsigned()?;
                let mut denom = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let start = self.pos;
                    denom = self.unsigned()?;
                    if denom.is_zero() {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: String::from("zero denominator"),
                        });
                    }
                }
                Ok(poly_form(Polynomial::constant(
                    self.nvars,
                    Rational::new(numer, denom),
                )))
            }
            Some(_) => Err(self.error("expected a number, variable, differential or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn wedge_chain(&mut self) -> Result<RawForm> {
        let mut slots = Vec::new();
        loop {
            self.skip_ws();
            if !self.src[self.pos..].starts_with(b"dX") {
                return Err(self.error("expected `dX`"));
            }
            self.pos += 2;
            slots.push(self.variable()?);
            let save = self.pos;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                if self.peek() == Some(b'd') {
                    continue;
                }
                return Err(self.error("expected `dX` after `^`"));
            }
            self.pos = save;
            break;
        }
        let mut out = RawForm::new();
        if let Some((sorted, sign)) = sort_with_sign(&slots) {
            let c = if sign > 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            out.insert(sorted, Polynomial::constant(self.nvars, c));
        }
        Ok(out)
    }

    fn variable(&mut self) -> Result<usize> {
        let start = self.pos;
        let label = self.unsigned()?;
        let label = usize::try_from(&label).map_err(|_| Error::Syntax {
            pos: start,
            msg: String::from("variable index too large"),
        })?;
        if label < self.base || label - self.base >= self.nvars {
            return Err(Error::VariableOutOfRange { label });
        }
        Ok(label - self.base)
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        // Digits must follow immediately; whitespace inside numbers is an error.
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits
            .parse::<BigInt>()
            .map_err(|e| self.error(&format!("{e}")))
    }
}

fn poly_form(p: Polynomial) -> RawForm {
    let mut out = RawForm::new();
    if !p.is_zero() {
        out.insert(Vec::new(), p);
    }
    out
}

/// Sorts a list of distinct slots, returning the permutation sign, or
/// `None` if a slot repeats.
pub(crate) fn sort_with_sign(slots: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = slots.to_vec();
    let mut sign = 1i8;
    // insertion sort counts transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}
