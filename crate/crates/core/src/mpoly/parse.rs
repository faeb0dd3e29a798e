//! Recursive-descent parser for the polynomial text format. Accepts the
//! printed form plus `-` and parentheses.

use std::sync::Arc;

use super::{Block, MPoly, Ring, VarId};
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

pub(super) fn parse_poly(ring: &Arc<Ring>, s: &str) -> Result<MPoly> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, ring };
    let out = p.sum()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn sum(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        let ring = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c @ (b'x' | b'y')) => {
                self.pos += 1;
                self.expect(b'[')?;
                let copy = self.number()? as usize;
                self.expect(b',')?;
                let coord = self.number()? as usize;
                self.expect(b']')?;
                let block = if c == b'x' { Block::X } else { Block::Y };
                let v = VarId { block, copy, coord };
                if !ring.space.contains(v) {
                    return Err(self.err(&format!("variable {v} outside the ring")));
                }
                Ok(MPoly::var(ring, v))
            }
            Some(b'[') => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos] != b']' {
                    self.pos += 1;
                }
                self.expect(b']')?;
                let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let c = ring.field.parse(text)?;
                Ok(MPoly::constant(ring, c))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let c = ring.field.from_int((n % ring.field.p() as u64) as i64);
                Ok(MPoly::constant(ring, c))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}
