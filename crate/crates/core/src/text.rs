//! Parser for the text form of algebra elements.
//!
//! ```text
//! expression := sign? term (("+" | "-") term)*
//! term       := rational? word | rational
//! word       := ("z" "[" int "," int "]")+ | "1"
//! rational   := int ("/" int)?
//! ```
//!
//! A bare rational denotes a multiple of the unit word, and `0` is the zero
//! element. `AlgebraElement`'s `Display` output always parses back to the
//! same element.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, TensorElement};
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Slash,
    Plus,
    Minus,
    Letter(u32, u32),
    Tensor,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    let read_int = |pos: &mut usize| -> Option<(usize, usize)> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then_some((start, *pos))
    };
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => pos += 1,
            b'+' => {
                out.push((pos, Tok::Plus));
                pos += 1;
            }
            b'-' => {
                out.push((pos, Tok::Minus));
                pos += 1;
            }
            b'/' => {
                out.push((pos, Tok::Slash));
                pos += 1;
            }
            b'0'..=b'9' => {
                let (s, e) = read_int(&mut pos).expect("at least one digit");
                out.push((s, Tok::Int(text[s..e].parse().expect("ascii digits"))));
            }
            _ if text[pos..].starts_with('⊗') => {
                out.push((pos, Tok::Tensor));
                pos += '⊗'.len_utf8();
            }
            b'z' => {
                let start = pos;
                pos += 1;
                let expect = |pos: &mut usize, ch: u8| -> Result<()> {
                    while *pos < bytes.len() && bytes[*pos] == b' ' {
                        *pos += 1;
                    }
                    if bytes.get(*pos) == Some(&ch) {
                        *pos += 1;
                        Ok(())
                    } else {
                        Err(err(*pos, format!("expected `{}`", ch as char)))
                    }
                };
                let int = |pos: &mut usize| -> Result<u32> {
                    while *pos < bytes.len() && bytes[*pos] == b' ' {
                        *pos += 1;
                    }
                    let (s, e) = read_int(pos).ok_or_else(|| err(*pos, "expected an integer"))?;
                    text[s..e].parse().map_err(|_| err(s, "subscript out of range"))
                };
                expect(&mut pos, b'[')?;
                let i = int(&mut pos)?;
                expect(&mut pos, b',')?;
                let j = int(&mut pos)?;
                expect(&mut pos, b']')?;
                out.push((start, Tok::Letter(i, j)));
            }
            _ => return Err(err(pos, format!("unexpected character `{}`", text[pos..].chars().next().unwrap()))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    idx: usize,
    end: usize,
    r: u32,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.idx + k).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn at_end(&self) -> bool {
        self.idx >= self.toks.len()
    }

    /// Leading sign of a term: optional before the first term, required after.
    fn sign(&mut self, first: bool) -> Result<Rational> {
        match self.peek() {
            Some(Tok::Plus) => {
                self.idx += 1;
                Ok(Rational::one())
            }
            Some(Tok::Minus) => {
                self.idx += 1;
                Ok(-Rational::one())
            }
            None if first => Err(err(self.end, "empty expression")),
            None => Err(err(self.end, "expected a term")),
            _ if !first => Err(err(self.pos(), "expected `+` or `-`")),
            _ => Ok(Rational::one()),
        }
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        let Some(Tok::Int(n)) = self.peek() else { return Ok(None) };
        let mut q = Rational::from_integer(n.clone());
        self.idx += 1;
        if let Some(Tok::Slash) = self.peek() {
            self.idx += 1;
            match self.peek() {
                Some(Tok::Int(d)) if !d.is_zero() => {
                    q /= Rational::from_integer(d.clone());
                    self.idx += 1;
                }
                Some(Tok::Int(_)) => return Err(err(self.pos(), "zero denominator")),
                _ => return Err(err(self.pos(), "expected a denominator")),
            }
        }
        Ok(Some(q))
    }

    /// A run of letters, or `1` for the unit word.
    fn word(&mut self) -> Result<Option<Word>> {
        let mut letters = Vec::new();
        while let Some(Tok::Letter(i, j)) = self.peek() {
            letters.push(Letter::new(*i, *j, self.r)?);
            self.idx += 1;
        }
        if !letters.is_empty() {
            return Ok(Some(Word::from_letters(letters)));
        }
        if matches!(self.peek(), Some(Tok::Int(n)) if n.is_one()) && !matches!(self.peek_at(1), Some(Tok::Slash)) {
            self.idx += 1;
            return Ok(Some(Word::empty()));
        }
        Ok(None)
    }

    fn term(&mut self) -> Result<(Rational, Word)> {
        let term_pos = self.pos();
        let coeff = self.rational()?;
        match (coeff, self.word()?) {
            (c, Some(w)) => Ok((c.unwrap_or_else(Rational::one), w)),
            (Some(c), None) => Ok((c, Word::empty())),
            (None, None) => Err(err(term_pos, "expected a coefficient or a word")),
        }
    }

    fn expect_tensor(&mut self) -> Result<()> {
        if let Some(Tok::Tensor) = self.peek() {
            self.idx += 1;
            Ok(())
        } else {
            Err(err(self.pos(), "expected `⊗`"))
        }
    }

    fn tensor_term(&mut self) -> Result<(Rational, Word, Word)> {
        let term_pos = self.pos();
        let coeff = self.rational()?;
        let left = match self.word()? {
            Some(w) => w,
            // `1 ⊗ v`: the integer was the unit word
            None if matches!(self.peek(), Some(Tok::Tensor)) && coeff.as_ref().is_some_and(|c| c.is_one()) => {
                Word::empty()
            }
            None => return Err(err(term_pos, "expected a word")),
        };
        self.expect_tensor()?;
        let right = self.word()?.ok_or_else(|| err(self.pos(), "expected a word"))?;
        let c = coeff.unwrap_or_else(Rational::one);
        Ok((c, left, right))
    }
}

/// Parse an element of the algebra of index `r`.
pub fn parse_element(text: &str, r: u32) -> Result<AlgebraElement> {
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, idx: 0, end: text.len(), r };
    let mut out = AlgebraElement::zero(r);
    let mut first = true;
    while first || !p.at_end() {
        let sign = p.sign(first)?;
        first = false;
        let (c, w) = p.term()?;
        out.add_term(w, c * sign);
    }
    Ok(out)
}

/// Parse an element of the tensor square, as printed by `TensorElement`:
/// terms `rational? word ⊗ word` with `1` for the unit word.
pub fn parse_tensor(text: &str, r: u32) -> Result<TensorElement> {
    if r == 0 {
        return Err(Error::ZeroIndex);
    }
    let toks = lex(text)?;
    if matches!(toks.as_slice(), [(_, Tok::Int(z))] if z.is_zero()) {
        return Ok(TensorElement::zero(r));
    }
    let mut p = Parser { toks: &toks, idx: 0, end: text.len(), r };
    let mut out = TensorElement::zero(r);
    let mut first = true;
    while first || !p.at_end() {
        let sign = p.sign(first)?;
        first = false;
        let (c, u, v) = p.tensor_term()?;
        out.add_term(u, v, c * sign);
    }
    Ok(out)
}
