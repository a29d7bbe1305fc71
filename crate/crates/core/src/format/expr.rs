//! Tiny infix reader for rational functions of `s`, e.g. `"(s^2 + 1)/(s + 1/2)"`.

use crate::error::{Error, Result};
use crate::exactlin::parse_rational;
use crate::polymat::Polynomial;
use crate::witness::{RationalFunction, RationalFunctionMatrix};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::InvalidLiteral(format!("{} at offset {} in {:?}", msg, self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let rhs = self.unary()?;
                let inv = rhs.recip().map_err(|_| self.err("division by zero"))?;
                acc = &acc * &inv;
            } else if matches!(self.peek(), Some('s' | '(')) {
                // implicit product such as "2s" or "(s+1)(s+2)"
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let k: u32 = self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected a nonnegative integer exponent"))?;
        let mut out = RationalFunction::one();
        for _ in 0..k {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some('s') => {
                self.pos += 1;
                Ok(RationalFunction::from_poly(Polynomial::s()))
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                let rest = &self.src[start..];
                let mut len = rest
                    .find(|c: char| !(c.is_ascii_digit() || c == '.'))
                    .unwrap_or(rest.len());
                // exponent part, only when digits follow
                let tail = &rest[len..];
                if let Some(exp) = tail.strip_prefix(['e', 'E']) {
                    let exp = exp.strip_prefix(['+', '-']).unwrap_or(exp);
                    let digits = exp.find(|c: char| !c.is_ascii_digit()).unwrap_or(exp.len());
                    if digits > 0 {
                        len += tail.len() - exp.len() + digits;
                    }
                }
                let value = parse_rational(&rest[..len]).map_err(|_| self.err("bad number"))?;
                self.pos += len;
                Ok(RationalFunction::constant(value))
            }
            _ => Err(self.err("expected a number, 's' or '('")),
        }
    }
}

pub fn parse_rational_function(text: &str) -> Result<RationalFunction> {
    let mut p = Parser { src: text, pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Rows separated by `;`, entries by `,`.
pub fn parse_transfer_matrix(text: &str) -> Result<RationalFunctionMatrix> {
    let rows = text
        .split(';')
        .map(|row| row.split(',').map(parse_rational_function).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    from_rows(rows)
}

pub(crate) fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<RationalFunctionMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidLiteral("transfer matrix rows differ in length".into()));
    }
    let mut out = RationalFunctionMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, f) in row.into_iter().enumerate() {
            out.set(i, j, f);
        }
    }
    Ok(out)
}
