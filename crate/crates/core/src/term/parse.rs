//! Concrete syntax:
//!
//! ```text
//! term  ::= '\' ident+ '.' term | app
//! app   ::= atom+
//! atom  ::= ident | '(' term ')'
//! ident ::= [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! Application associates to the left and an abstraction body extends as far
//! right as possible. The names `I`, `T`, `F` and `Omega` denote the standard
//! combinators unless bound by an enclosing abstraction.

use super::syntax::{combinators, Term};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser { src: text, pos: 0, scope: Vec::new() };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

fn alias(name: &str) -> Option<Term> {
    match name {
        "I" => Some(combinators::identity()),
        "T" => Some(combinators::truth()),
        "F" => Some(combinators::falsity()),
        "Omega" => Some(combinators::omega()),
        _ => None,
    }
}

/// Identifiers that parse as combinators when free.
pub const ALIASES: [&str; 4] = ["I", "T", "F", "Omega"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    scope: Vec<String>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
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

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        let end = chars
            .find(|&(_, c)| !(c.is_ascii_alphanumeric() || c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        self.pos += end;
        Some(rest[..end].to_string())
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.peek() == Some('\\') {
            self.pos += 1;
            let mut binders = Vec::new();
            while let Some(x) = self.ident() {
                binders.push(x);
            }
            if binders.is_empty() {
                return Err(self.error("expected a variable after '\\'"));
            }
            self.skip_ws();
            if self.peek() != Some('.') {
                return Err(self.error("expected '.'"));
            }
            self.pos += 1;
            let depth = self.scope.len();
            self.scope.extend(binders.iter().cloned());
            let body = self.term();
            self.scope.truncate(depth);
            return Ok(Term::abs_many(binders, body?));
        }
        let mut head = self.atom()?.ok_or_else(|| self.error("expected a term"))?;
        while let Some(arg) = self.atom()? {
            head = Term::app(head, arg);
        }
        Ok(head)
    }

    fn atom(&mut self) -> Result<Option<Term>> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(Some(t))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident().expect("identifier start");
                if !self.scope.contains(&name) {
                    if let Some(t) = alias(&name) {
                        return Ok(Some(t));
                    }
                }
                Ok(Some(Term::Var(name)))
            }
            _ => Ok(None),
        }
    }
}
