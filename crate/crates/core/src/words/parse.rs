//! Word and word-sum text.
//!
//! ```text
//! sum  := ['+'|'-'] prod (('+'|'-') prod)*
//! prod := item (('*' | '#' | 'sh') item)*
//! item := '(' ratfun ')' | uint ['/' uint] | word
//! word := letter+          letter := 'x' uint
//! ```
//!
//! A parenthesized item or a number is a coefficient; `*` between two word
//! sums is the stuffle product, `#` or `sh` the shuffle product.

use alloc::string::ToString;

use super::{Word, WordSum};
use crate::kernel::parse::{parse_ratfun, Parser};
use crate::kernel::{Rational, RationalFunction, MAX_VARS};
use crate::Error;

enum Item {
    Scalar(RationalFunction),
    Sum(WordSum),
}

impl Item {
    fn into_sum(self) -> WordSum {
        match self {
            Item::Scalar(c) => WordSum::term(Word::empty(), c),
            Item::Sum(s) => s,
        }
    }
}

pub fn parse_word(text: &str) -> Result<Word, Error> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    if p.peek() == Some(0xe2) && text.trim() == "∅" {
        return Ok(Word::empty());
    }
    let w = word(&mut p)?;
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(w)
}

pub fn parse_wordsum(text: &str) -> Result<WordSum, Error> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let s = sum(&mut p)?;
    if p.peek().is_some() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(s)
}

fn at_letter(p: &mut Parser) -> bool {
    p.peek() == Some(b'x') && p.src.get(p.pos + 1).is_some_and(|c| c.is_ascii_digit())
}

fn word(p: &mut Parser) -> Result<Word, Error> {
    let mut letters = alloc::vec::Vec::new();
    while at_letter(p) {
        letters.push(letter(p)?);
    }
    Ok(Word::new(&letters))
}

/// `x` followed by digits only, so `x1x2` reads as two letters.
fn letter(p: &mut Parser) -> Result<usize, Error> {
    p.skip_ws();
    let start = p.pos;
    p.pos += 1;
    while p.src.get(p.pos).is_some_and(|c| c.is_ascii_digit()) {
        p.pos += 1;
    }
    let text = core::str::from_utf8(&p.src[start..p.pos]).unwrap_or_default();
    match text[1..].parse::<usize>() {
        Ok(n) if (1..=MAX_VARS).contains(&n) => Ok(n),
        _ => {
            p.pos = start;
            Err(Error::UnknownVariable(text.to_string()))
        }
    }
}

fn sum(p: &mut Parser) -> Result<WordSum, Error> {
    let mut acc = match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            prod(p)?.into_sum().neg()
        }
        Some(b'+') => {
            p.pos += 1;
            prod(p)?.into_sum()
        }
        _ => prod(p)?.into_sum(),
    };
    loop {
        match p.peek() {
            Some(b'+') => {
                p.pos += 1;
                acc = acc.add(&prod(p)?.into_sum());
            }
            Some(b'-') => {
                p.pos += 1;
                acc = acc.sub(&prod(p)?.into_sum());
            }
            _ => return Ok(acc),
        }
    }
}

fn prod(p: &mut Parser) -> Result<Item, Error> {
    let mut acc = item(p)?;
    loop {
        let shuffle = match p.peek() {
            Some(b'*') => {
                p.pos += 1;
                false
            }
            Some(b'#') => {
                p.pos += 1;
                true
            }
            Some(b's') if p.src[p.pos..].starts_with(b"sh") => {
                p.pos += 2;
                true
            }
            _ => return Ok(acc),
        };
        let rhs = item(p)?;
        acc = match (acc, rhs) {
            (Item::Scalar(a), Item::Scalar(b)) => Item::Scalar(a.mul(&b)),
            (Item::Scalar(a), Item::Sum(s)) | (Item::Sum(s), Item::Scalar(a)) => Item::Sum(s.scale(&a)),
            (Item::Sum(a), Item::Sum(b)) if shuffle => Item::Sum(a.shuffle(&b)),
            (Item::Sum(a), Item::Sum(b)) => Item::Sum(a.stuffle(&b)),
        };
    }
}

fn item(p: &mut Parser) -> Result<Item, Error> {
    match p.peek() {
        Some(b'(') => {
            let start = p.pos;
            let mut depth = 0usize;
            let mut end = None;
            for (k, &c) in p.src[start..].iter().enumerate() {
                match c {
                    b'(' => depth += 1,
                    b')' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(start + k);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end = end.ok_or_else(|| p.error("unbalanced `(`"))?;
            let inner = core::str::from_utf8(&p.src[start + 1..end]).map_err(|_| p.error("invalid text"))?;
            let c = parse_ratfun(inner).map_err(|e| match e {
                Error::Syntax { offset, message } => Error::Syntax { offset: offset + start + 1, message },
                other => other,
            })?;
            p.pos = end + 1;
            Ok(Item::Scalar(c))
        }
        Some(c) if c.is_ascii_digit() => {
            let n = p.uint()?;
            let mut text = n;
            if p.peek() == Some(b'/') {
                p.pos += 1;
                text.push('/');
                text.push_str(&p.uint()?);
            }
            let q: Rational = text.parse()?;
            Ok(Item::Scalar(RationalFunction::constant(q)))
        }
        _ if at_letter(p) => Ok(Item::Sum(WordSum::word(word(p)?))),
        Some(b'x') => Err(p.error("expected a letter `x<n>`")),
        Some(c) if c.is_ascii_alphabetic() => {
            let at = p.pos;
            match p.variable() {
                Err(e) => Err(e),
                Ok(_) => Err(Error::Syntax { offset: at, message: "unexpected name".to_string() }),
            }
        }
        Some(c) => Err(p.error(&alloc::format!("unexpected `{}`", c as char))),
        None => Err(p.error("unexpected end of input")),
    }
}
