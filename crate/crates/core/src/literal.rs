//! Cursor for the compact literal grammar used in scenario files
//! (`coord:2`, `q^n:1/2`, `matrix[[1,0],[0,1]]`, `<0;(1,2)>`, ...).

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }

    pub(crate) fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if pred(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    pub(crate) fn ident(&mut self) -> Result<&'a str> {
        let start = self.pos;
        let s = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.');
        if s.is_empty() || !s.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
            self.pos = start;
            return Err(self.error("expected identifier"));
        }
        Ok(s)
    }

    pub(crate) fn scalar(&mut self) -> Result<Scalar> {
        let s = self.take_while(|c| c.is_ascii_digit() || c == '-' || c == '/');
        if s.is_empty() {
            return Err(self.error("expected scalar"));
        }
        s.parse()
    }

    pub(crate) fn uint(&mut self) -> Result<u64> {
        let s = self.take_while(|c| c.is_ascii_digit());
        s.parse().map_err(|_| self.error("expected unsigned integer"))
    }

    pub(crate) fn starts_scalar(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '-')
    }

    /// Comma-separated scalars up to (not including) `close`.
    pub(crate) fn scalar_list(&mut self, close: char) -> Result<Vec<Scalar>> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.scalar()?);
            if !self.eat(',') {
                break;
            }
        }
        Ok(out)
    }
}
