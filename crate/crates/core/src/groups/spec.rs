//! Parser for the group mini-language:
//!
//! ```text
//! expr := atom ( "x" atom )*
//! atom := C(n) | D(n) | S(k) | A(k)
//! ```
//!
//! Whitespace is ignored everywhere. Products associate to the left.

use super::{
    build_alternating, build_cyclic, build_dihedral, build_symmetric, direct_product, GroupError,
    GroupTable,
};

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.at)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.at += 1;
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |&(p, _)| p)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, GroupError> {
        Err(GroupError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: char) -> Result<(), GroupError> {
        match self.peek() {
            Some(c) if c == want => {
                self.at += 1;
                Ok(())
            }
            Some(c) => self.err(format!("expected '{want}', found '{c}'")),
            None => self.err(format!("expected '{want}', found end of input")),
        }
    }

    fn number(&mut self) -> Result<usize, GroupError> {
        self.skip_ws();
        let start = self.at;
        let mut value: usize = 0;
        while let Some(d) = self.chars.get(self.at).and_then(|(_, c)| c.to_digit(10)) {
            value = value.saturating_mul(10).saturating_add(d as usize);
            self.at += 1;
        }
        if self.at == start {
            return self.err("expected a number");
        }
        Ok(value)
    }

    fn atom(&mut self) -> Result<GroupTable, GroupError> {
        let kind = match self.peek() {
            Some(c @ ('C' | 'D' | 'S' | 'A')) => c,
            Some(c) => return self.err(format!("expected one of C, D, S, A, found '{c}'")),
            None => return self.err("expected a group, found end of input"),
        };
        self.at += 1;
        self.expect('(')?;
        let n = self.number()?;
        self.expect(')')?;
        match kind {
            'C' => build_cyclic(n),
            'D' => build_dihedral(n),
            'S' => build_symmetric(n),
            _ => build_alternating(n),
        }
    }

    fn expr(&mut self) -> Result<GroupTable, GroupError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                None => return Ok(acc),
                Some('x' | 'X') => {
                    self.at += 1;
                    let rhs = self.atom()?;
                    acc = direct_product(&acc, &rhs)?;
                }
                Some(c) => return self.err(format!("expected 'x' or end of input, found '{c}'")),
            }
        }
    }
}

/// Parses and builds a group such as `"D(12) x C(2)"`.
pub fn parse_group_spec(text: &str) -> Result<GroupTable, GroupError> {
    let mut p = Parser {
        chars: text.char_indices().collect(),
        at: 0,
        src: text,
    };
    p.expr()
}
