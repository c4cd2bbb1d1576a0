//! Expressions over a character table.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INT)?
//! atom   := INT | "r" INT? | "C" "_"? INT "(" expr ")" | "psi" "_"? INT "(" expr ")"
//!         | "lambda" "_"? INT "(" expr ")" | "(" expr ")"
//! ```
//!
//! `rK` is the `K`-th irreducible in canonical order (`r0` trivial) and a bare
//! `r` means `r1`. Integers denote multiples of the trivial character.

use std::sync::Arc;

use chern_core::{CharacterTable, Error, VirtualCharacter};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for ExprError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a Arc<CharacterTable>,
}

pub fn parse_expr(text: &str, table: &Arc<CharacterTable>) -> Result<VirtualCharacter, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, table };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ExprError {
        ExprError { offset: self.pos, message: message.to_string() }
    }

    fn lift(&self, at: usize, e: Error) -> ExprError {
        ExprError { offset: at, message: e.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let end = self.pos + word.len();
        if end <= self.src.len() && self.src[self.pos..end].eq_ignore_ascii_case(word.as_bytes()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_int(&mut self) -> Result<usize, ExprError> {
        let at = self.pos;
        let n = self.int()?;
        usize::try_from(n).map_err(|_| ExprError { offset: at, message: "integer too large".into() })
    }

    fn expr(&mut self) -> Result<VirtualCharacter, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<VirtualCharacter, ExprError> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<VirtualCharacter, ExprError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<VirtualCharacter, ExprError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let n = self.small_int()?;
            let n = u32::try_from(n).map_err(|_| ExprError { offset: at, message: "exponent too large".into() })?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn call_arg(&mut self) -> Result<(usize, VirtualCharacter), ExprError> {
        self.eat(b'_');
        let n = self.small_int()?;
        self.expect(b'(')?;
        let x = self.expr()?;
        self.expect(b')')?;
        Ok((n, x))
    }

    fn atom(&mut self) -> Result<VirtualCharacter, ExprError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(b')')?;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => Ok(VirtualCharacter::constant(self.table, self.int()?)),
            _ if self.keyword("lambda") => {
                let (n, x) = self.call_arg()?;
                x.lambda(n).map_err(|e| self.lift(at, e))
            }
            _ if self.keyword("psi") => {
                let (n, x) = self.call_arg()?;
                x.adams(n as u64).map_err(|e| self.lift(at, e))
            }
            Some(b'C') | Some(b'c') => {
                self.pos += 1;
                let (n, x) = self.call_arg()?;
                x.chern(n).map_err(|e| self.lift(at, e))
            }
            Some(b'r') | Some(b'R') => {
                self.pos += 1;
                let i = if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) { self.small_int()? } else { 1 };
                if i >= self.table.rank() {
                    return Err(ExprError {
                        offset: at,
                        message: format!(
                            "no irreducible r{i}: the table has {} (r0..r{})",
                            self.table.rank(),
                            self.table.rank() - 1
                        ),
                    });
                }
                Ok(VirtualCharacter::irreducible(self.table, i))
            }
            Some(_) => Err(self.error("expected an irreducible, integer, function or '('")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
