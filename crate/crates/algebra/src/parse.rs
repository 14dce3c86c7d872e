//! Polynomial parser: `^` powers, optional `*`, parentheses, declared variables.

use mfcat_linalg::Field;
use thiserror::Error;

use crate::monomial::Monomial;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{input}` at byte {pos}: {msg}")]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a, F> {
    input: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [String],
    _f: std::marker::PhantomData<F>,
}

/// Parses `s` as a polynomial in the variables `names`.
pub fn parse_poly<F: Field>(s: &str, names: &[String]) -> Result<Poly<F>, ParseError> {
    let toks = tokenize(s, names)?;
    let mut p = Parser {
        input: s,
        toks,
        pos: 0,
        names,
        _f: std::marker::PhantomData,
    };
    if p.toks.is_empty() {
        return Err(p.err(0, "empty polynomial"));
    }
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        let at = p.toks[p.pos].0;
        return Err(p.err(at, "unexpected trailing input"));
    }
    Ok(f)
}

fn tokenize(s: &str, names: &[String]) -> Result<Vec<(usize, Tok)>, ParseError> {
    let err = |pos: usize, msg: String| ParseError {
        input: s.to_string(),
        pos,
        msg,
    };
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        match c {
            b' ' | b'\t' | b'\n' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1
            }
            b'0'..=b'9' => {
                let st = i;
                while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'/') {
                    i += 1;
                }
                out.push((st, Tok::Num(s[st..i].to_string())));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let st = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                // split a run such as `xy` into declared names, longest match first
                let word = &s[st..i];
                let mut k = 0;
                while k < word.len() {
                    let best = names
                        .iter()
                        .filter(|n| word[k..].starts_with(n.as_str()))
                        .max_by_key(|n| n.len());
                    match best {
                        Some(n) => {
                            out.push((st + k, Tok::Ident(n.clone())));
                            k += n.len();
                        }
                        None => {
                            return Err(err(st + k, format!("unknown variable in `{word}`")));
                        }
                    }
                }
            }
            _ => return Err(err(i, format!("unexpected character `{}`", c as char))),
        }
    }
    Ok(out)
}

impl<'a, F: Field> Parser<'a, F> {
    fn err(&self, pos: usize, msg: &str) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.input.len(), |(p, _)| *p)
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<F>, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| self.err(at, "bad exponent"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err(at, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<F>, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = F::parse_literal(&n).map_err(|e| self.err(at, &e.to_string()))?;
                Ok(Poly::constant(self.nvars(), c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self.names.iter().position(|n| *n == name).expect("tokenizer checked");
                Ok(Poly::term(Monomial::var(self.nvars(), i, 1), F::one()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err(self.here(), "missing `)`")),
                }
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            _ => Err(self.err(at, "expected a number, variable or `(`")),
        }
    }
}
