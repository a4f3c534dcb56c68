//! Text syntax for group elements.
//!
//! ```text
//! element := term ('*' term)*
//! term    := 'e' | 's' INT | 'd(' INT (',' INT)* ')'
//! ```
//!
//! Terms multiply left to right; `d(...)` entries may be negative and are
//! reduced mod `b`. Whitespace between tokens is ignored. The `Display`
//! form of [`GroupElement`] is accepted back unchanged.

use crate::error::{HeckeError, Result};
use crate::group::{GroupElement, GroupParams};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(HeckeError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }
}

/// Parses an element of `W H_b` for the given parameters.
pub fn parse_element(text: &str, params: &GroupParams) -> Result<GroupElement> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut acc = params.identity();
    loop {
        let term = term(&mut cur, params)?;
        acc = &acc * &term;
        match cur.peek() {
            None => return Ok(acc),
            Some(b'*') => cur.pos += 1,
            Some(_) => return cur.err("expected '*' or end of input"),
        }
    }
}

fn term(cur: &mut Cursor, params: &GroupParams) -> Result<GroupElement> {
    match cur.peek() {
        Some(b'e') => {
            cur.pos += 1;
            Ok(params.identity())
        }
        Some(b's') => {
            cur.pos += 1;
            let at = cur.pos;
            let i = cur.int()?;
            if i < 1 || i as usize >= params.n {
                cur.pos = at;
                return Err(HeckeError::GeneratorOutOfRange { index: i.max(0) as usize, n: params.n });
            }
            Ok(params.generator(i as usize))
        }
        Some(b'd') => {
            cur.pos += 1;
            cur.expect(b'(')?;
            let mut exps = vec![cur.int()?];
            while cur.peek() == Some(b',') {
                cur.pos += 1;
                exps.push(cur.int()?);
            }
            cur.expect(b')')?;
            if exps.len() != params.n {
                return Err(HeckeError::Arity { got: exps.len(), expected: params.n });
            }
            Ok(params.diag(&exps))
        }
        Some(_) => cur.err("expected 'e', 's<i>' or 'd(...)'"),
        None => cur.err("unexpected end of input"),
    }
}
