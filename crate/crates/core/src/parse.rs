//! Object expressions.
//!
//! ```text
//! expr := term ('+' term)*
//! term := [nat '*'] atom ['[' int ']']
//! atom := 'O(' int ')' | 'T(' label ',' nat ')' | 'S(' int ',' int ',' label ')' | '0'
//! ```
//!
//! Whitespace is ignored. `O` and `T` atoms live on P1, `S` atoms on the
//! elliptic curve; one expression may not mix them.

use std::fmt;

use num_integer::Integer;

use crate::elliptic::{EllipticObject, StableClass};
use crate::error::{Error, Result};
use crate::object::{Object, Point};
use crate::p1::{DerivedObject, P1Indec};

/// A parsed, normalized object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedObject {
    P1(DerivedObject),
    Elliptic(EllipticObject),
}

impl ParsedObject {
    pub fn into_p1(self) -> Result<DerivedObject> {
        match self {
            ParsedObject::P1(x) => Ok(x),
            ParsedObject::Elliptic(x) if x.is_zero() => Ok(Object::zero()),
            ParsedObject::Elliptic(_) => Err(Error::MixedCategories),
        }
    }

    pub fn into_elliptic(self) -> Result<EllipticObject> {
        match self {
            ParsedObject::Elliptic(x) => Ok(x),
            ParsedObject::P1(x) if x.is_zero() => Ok(Object::zero()),
            ParsedObject::P1(_) => Err(Error::MixedCategories),
        }
    }
}

impl fmt::Display for ParsedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedObject::P1(x) => x.fmt(f),
            ParsedObject::Elliptic(x) => x.fmt(f),
        }
    }
}

enum Atom {
    Zero,
    P1(P1Indec),
    Elliptic(StableClass),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(format!("expected `{}`, found `{}`", c as char, d as char)),
            None => self.err(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn nat(&mut self) -> Result<u64> {
        let at = self.pos;
        match self.digits() {
            Some(d) => d.parse().map_err(|_| Error::Syntax { pos: at, msg: format!("`{d}` is too large") }),
            None => self.err("expected a natural number"),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let at = self.pos;
        let n = self.nat()?;
        let n = i64::try_from(n).map_err(|_| Error::Syntax { pos: at, msg: format!("`{n}` is too large") })?;
        Ok(if negative { -n } else { n })
    }

    fn label(&mut self) -> Result<Point> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a point label");
        }
        Ok(Point::new(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii label")))
    }

    fn atom(&mut self) -> Result<Atom> {
        let start = self.pos;
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(Atom::Zero)
            }
            Some(b'O') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.int()?;
                self.expect(b')')?;
                Ok(Atom::P1(P1Indec::Line(n)))
            }
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let point = self.label()?;
                self.expect(b',')?;
                let at = {
                    self.skip_ws();
                    self.pos
                };
                let d = self.nat()?;
                self.expect(b')')?;
                if d == 0 {
                    return Err(Error::InvalidLength { pos: at });
                }
                let length = u32::try_from(d).map_err(|_| Error::Syntax { pos: at, msg: format!("length {d} is too large") })?;
                Ok(Atom::P1(P1Indec::Torsion { point, length }))
            }
            Some(b'S') => {
                self.pos += 1;
                self.expect(b'(')?;
                let r = self.int()?;
                self.expect(b',')?;
                let d = self.int()?;
                self.expect(b',')?;
                let x = self.label()?;
                self.expect(b')')?;
                if r.gcd(&d) != 1 {
                    return Err(Error::NonCoprime { r, d, pos: start });
                }
                Ok(Atom::Elliptic(StableClass::new(r, d, x.label())?))
            }
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses and normalizes an object expression.
pub fn parse_object(text: &str) -> Result<ParsedObject> {
    if !text.is_ascii() {
        let pos = text.char_indices().find(|(_, c)| !c.is_ascii()).map(|(i, _)| i).unwrap_or(0);
        return Err(Error::Syntax { pos, msg: "non-ASCII character".into() });
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut p1 = Vec::new();
    let mut ell = Vec::new();
    loop {
        let mult = match p.peek() {
            Some(c) if c.is_ascii_digit() => {
                let save = p.pos;
                let n = p.nat()?;
                if p.peek() == Some(b'*') {
                    p.pos += 1;
                    n
                } else {
                    p.pos = save;
                    1
                }
            }
            _ => 1,
        };
        let atom = p.atom()?;
        let shift = if p.peek() == Some(b'[') {
            p.pos += 1;
            let i = p.int()?;
            p.expect(b']')?;
            i
        } else {
            0
        };
        match atom {
            Atom::Zero => {}
            Atom::P1(g) => p1.push((g.at(shift), mult)),
            Atom::Elliptic(c) => ell.push((c.at(shift), mult)),
        }
        match p.peek() {
            Some(b'+') => p.pos += 1,
            None => break,
            Some(c) => return p.err(format!("expected `+` or end of input, found `{}`", c as char)),
        }
    }
    match (p1.is_empty(), ell.is_empty()) {
        (false, false) => Err(Error::MixedCategories),
        (true, false) => Ok(ParsedObject::Elliptic(Object::normalize(ell))),
        _ => Ok(ParsedObject::P1(Object::normalize(p1))),
    }
}

/// Parses an expression that must live on P1.
pub fn parse_p1(text: &str) -> Result<DerivedObject> {
    parse_object(text)?.into_p1()
}

/// Parses an expression that must live on the elliptic curve.
pub fn parse_elliptic(text: &str) -> Result<EllipticObject> {
    parse_object(text)?.into_elliptic()
}
