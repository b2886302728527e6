//! Reader for the polynomial text grammar:
//!
//! ```text
//! poly   := term (('+'|'-') term)*        (a leading '-' is allowed)
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' uint)?
//! coeff  := uint
//! ```
//!
//! Whitespace is insignificant. Integer literals are reduced mod p.

use super::monomial::Monomial;
use super::poly::{Polynomial, RingRef};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Comma,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let start = self.pos;
            let Some(&c) = self.src.get(self.pos) else {
                out.push((Tok::End, start));
                return Ok(out);
            };
            let tok = match c {
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'^' => Tok::Caret,
                b',' => Tok::Comma,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'0'..=b'9' => {
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((Tok::Num(s.to_string()), start));
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((Tok::Ident(s.to_string()), start));
                    continue;
                }
                _ => {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("unexpected character `{}`", c as char),
                    })
                }
            };
            self.pos += 1;
            out.push((tok, start));
        }
    }
}

struct Parser<'r> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    ring: &'r RingRef,
}

impl<'r> Parser<'r> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let field = *self.ring.field();
        let mut terms: Vec<(Monomial, u64)> = Vec::new();
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        loop {
            let (m, c) = self.term()?;
            let c = if negate { field.neg(c) } else { c };
            terms.push((m, c as u64));
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    negate = false;
                }
                Tok::Minus => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let field = *self.ring.field();
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut coeff = 1u32;
        match self.peek().clone() {
            Tok::Num(digits) => {
                self.bump();
                coeff = reduce_decimal(&digits, field.p());
            }
            Tok::Ident(_) => self.factor(&mut exps)?,
            other => return self.err(format!("expected a term, found {}", describe(&other))),
        }
        while *self.peek() == Tok::Star {
            self.bump();
            self.factor(&mut exps)?;
        }
        Ok((Monomial::from_exponents(&exps), coeff))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let pos = self.pos();
        let name = match self.bump() {
            Tok::Ident(name) => name,
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("expected a variable, found {}", describe(&other)),
                })
            }
        };
        let idx = self
            .ring
            .var_index(&name)
            .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
        let mut e = 1u32;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Tok::Num(d) => {
                    e = d.parse::<u32>().map_err(|_| Error::Overflow)?;
                }
                other => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("expected an exponent, found {}", describe(&other)),
                    })
                }
            }
        }
        exps[idx] = exps[idx].checked_add(e).ok_or(Error::Overflow)?;
        Ok(())
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            other => self.err(format!("unexpected {}", describe(other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(s) => format!("number `{s}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Comma => "`,`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn reduce_decimal(digits: &str, p: u32) -> u32 {
    digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p as u64) as u32
}

pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial> {
    let toks = Lexer::new(text).tokens()?;
    let mut parser = Parser { toks, i: 0, ring };
    let f = parser.poly()?;
    parser.expect_end()?;
    Ok(f)
}

/// Parses an ideal printed as `(f1, f2, ...)`, returning its generators.
pub fn parse_ideal_generators(text: &str, ring: &RingRef) -> Result<Vec<Polynomial>> {
    let toks = Lexer::new(text).tokens()?;
    let mut parser = Parser { toks, i: 0, ring };
    if parser.bump() != Tok::LParen {
        return Err(Error::Syntax {
            pos: 0,
            msg: "an ideal starts with `(`".into(),
        });
    }
    let mut gens = vec![parser.poly()?];
    while *parser.peek() == Tok::Comma {
        parser.bump();
        gens.push(parser.poly()?);
    }
    if *parser.peek() != Tok::RParen {
        return parser.err("expected `,` or `)`");
    }
    parser.bump();
    parser.expect_end()?;
    Ok(gens)
}
