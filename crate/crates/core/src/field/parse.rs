//! Recursive-descent parser for rational expressions.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := ('+'|'-') unary | power`, `power := atom ('^' ['-'] int)?`,
//! `atom := int | ident | '(' expr ')'`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::rational::RationalFunction;
use super::FieldError;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a Arc<[String]>,
}

pub fn parse_rational(text: &str, vars: &Arc<[String]>) -> Result<RationalFunction, FieldError> {
    let mut p = Parser { src: text, pos: 0, vars };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> FieldError {
        FieldError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, FieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, FieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.unary()?)?;
            } else if self.eat('/') {
                acc = acc.try_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, FieldError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, FieldError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            self.skip_ws();
            let k = self.integer()?;
            let k: i64 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -k } else { k });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, FieldError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<RationalFunction, FieldError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::constant(self.vars, BigRational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += self.peek().map(char::len_utf8).unwrap_or(1);
                }
                let name = &self.src[start..self.pos];
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(RationalFunction::var(self.vars, i)),
                    None => Err(FieldError::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
