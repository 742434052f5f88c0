//! Word grammar.
//!
//! Whitespace-separated tokens `name` or `name^k` with `k` a nonzero integer
//! (optionally signed). `1` (or an empty string) denotes the identity.
//! Parenthesised groups `( ... )^k` are accepted as a convenience.

use super::graph::DefiningGraph;
use super::word::Letter;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    graph: &'a DefiningGraph,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse(format!("{} at byte {}", msg.into(), self.pos))
    }

    fn sequence(&mut self, closing: bool) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None if closing => return Err(self.err("unclosed parenthesis")),
                None => return Ok(out),
                Some(b')') if closing => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(b')') => return Err(self.err("unexpected `)`")),
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sequence(true)?;
                    let k = self.exponent()?;
                    push_power(&mut out, &inner, k);
                }
                Some(b'1') => {
                    self.pos += 1;
                    if matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                        return Err(self.err("identifiers cannot start with a digit"));
                    }
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let gen = self
                        .graph
                        .index_of(name)
                        .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
                    let k = self.exponent()?;
                    push_power(&mut out, &[Letter::pos(gen)], k);
                }
                Some(c) => return Err(self.err(format!("unexpected character `{}`", c as char))),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected exponent digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let k: i64 = digits
            .parse()
            .map_err(|_| self.err(format!("exponent `{digits}` out of range")))?;
        if k == 0 {
            return Err(self.err("exponent must be nonzero"));
        }
        Ok(sign * k)
    }
}

fn push_power(out: &mut Vec<Letter>, base: &[Letter], k: i64) {
    let unit: Vec<Letter> = if k > 0 {
        base.to_vec()
    } else {
        base.iter().rev().map(|l| l.inv()).collect()
    };
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(&unit);
    }
}

/// Expands `text` into unit letters. Exponents are expanded, nothing is reduced.
pub fn parse_letters(graph: &DefiningGraph, text: &str) -> Result<Vec<Letter>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        graph,
    };
    p.sequence(false)
}
