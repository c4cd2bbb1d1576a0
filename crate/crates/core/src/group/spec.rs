//! Group-spec strings: `Spec := Atom ("x" Atom)*`,
//! `Atom := "C"n | "D"n | "Q8" | "A4" | "PSL(2," p ")"`.
//!
//! Whitespace is ignored everywhere and atom heads are case-insensitive.
//! Products associate to the left.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Dihedral group of order `2n`.
    Dihedral(u64),
    Quaternion8,
    Alternating4,
    Psl2(u64),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    /// Order of the described group, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Quaternion8 => Some(8),
            GroupSpec::Alternating4 => Some(12),
            GroupSpec::Psl2(p) => p.checked_mul(p.checked_mul(*p)?.checked_sub(1)?).map(|x| x / 2),
            GroupSpec::Product(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }

    /// Factors of a (left-nested) product, in order.
    pub fn factors(&self) -> Vec<&GroupSpec> {
        match self {
            GroupSpec::Product(a, b) => {
                let mut v = a.factors();
                v.extend(b.factors());
                v
            }
            other => vec![other],
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Alternating4 => write!(f, "A4"),
            GroupSpec::Psl2(p) => write!(f, "PSL(2,{p})"),
            GroupSpec::Product(a, b) => match **b {
                // right-nested products need parentheses the grammar lacks; flatten instead
                GroupSpec::Product(..) => {
                    let parts: Vec<String> = self.factors().iter().map(|s| s.to_string()).collect();
                    write!(f, "{}", parts.join("x"))
                }
                _ => write!(f, "{a}x{b}"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid group at offset {offset}: {message}")]
    Semantic { offset: usize, message: String },
}

impl SpecError {
    pub fn offset(&self) -> usize {
        match self {
            SpecError::Syntax { offset, .. } | SpecError::Semantic { offset, .. } => *offset,
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, end: src.len(), _src: src }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(o, _)| o).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c.to_ascii_uppercase())
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError::Syntax { offset: self.offset(), message: message.into() })
    }

    fn expect(&mut self, want: char) -> Result<(), SpecError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.syntax(format!("expected '{want}', found '{c}'")),
            None => self.syntax(format!("expected '{want}', found end of input")),
        }
    }

    fn number(&mut self) -> Result<(u64, usize), SpecError> {
        let start = self.offset();
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or(SpecError::Semantic { offset: start, message: "number too large".into() })?;
            digits += 1;
            self.pos += 1;
        }
        if digits == 0 {
            return self.syntax("expected a number");
        }
        Ok((value, start))
    }

    fn atom(&mut self) -> Result<GroupSpec, SpecError> {
        let start = self.offset();
        match self.peek() {
            Some('C') => {
                self.pos += 1;
                let (n, at) = self.number()?;
                if n == 0 {
                    return Err(SpecError::Semantic { offset: at, message: "cyclic order must be at least 1".into() });
                }
                Ok(GroupSpec::Cyclic(n))
            }
            Some('D') => {
                self.pos += 1;
                let (n, at) = self.number()?;
                if n == 0 {
                    return Err(SpecError::Semantic {
                        offset: at,
                        message: "dihedral parameter must be at least 1".into(),
                    });
                }
                Ok(GroupSpec::Dihedral(n))
            }
            Some('Q') => {
                self.pos += 1;
                let (n, at) = self.number()?;
                if n != 8 {
                    return Err(SpecError::Semantic { offset: at, message: "only Q8 is available".into() });
                }
                Ok(GroupSpec::Quaternion8)
            }
            Some('A') => {
                self.pos += 1;
                let (n, at) = self.number()?;
                if n != 4 {
                    return Err(SpecError::Semantic { offset: at, message: "only A4 is available".into() });
                }
                Ok(GroupSpec::Alternating4)
            }
            Some('P') => {
                for c in ['P', 'S', 'L', '(', '2', ','] {
                    self.expect(c)?;
                }
                let (p, at) = self.number()?;
                self.expect(')')?;
                if p < 3 || !is_prime(p) {
                    return Err(SpecError::Semantic { offset: at, message: format!("{p} is not an odd prime") });
                }
                Ok(GroupSpec::Psl2(p))
            }
            Some(c) => {
                Err(SpecError::Syntax { offset: start, message: format!("unexpected '{c}', expected a group atom") })
            }
            None => {
                Err(SpecError::Syntax { offset: start, message: "expected a group atom, found end of input".into() })
            }
        }
    }

    fn spec(&mut self) -> Result<GroupSpec, SpecError> {
        let mut acc = self.atom()?;
        while let Some(c) = self.peek() {
            if c == 'X' || c == '×' {
                self.pos += 1;
                let rhs = self.atom()?;
                acc = GroupSpec::product(acc, rhs);
            } else {
                return self.syntax(format!("unexpected '{c}', expected 'x' or end of input"));
            }
        }
        Ok(acc)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    Parser::new(text).spec()
}
