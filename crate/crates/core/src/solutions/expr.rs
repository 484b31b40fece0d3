//! Right-nested bracket expressions over registry names: `{eta:3, {eta:3, eta:-1}}`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::kernel::parse::Parser;
use crate::lie::{bracket_with, Bracket};
use crate::mould::{Executor, Mould};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    Leaf(String),
    /// `{e1, e2, ..., en} = {e1, {e2, ..., en}}`, `n >= 2`.
    Node(Vec<BracketExpr>),
}

impl BracketExpr {
    pub fn leaf(name: &str) -> Self {
        BracketExpr::Leaf(name.to_string())
    }

    /// `{a, b, ...}` over leaves.
    pub fn nested(names: &[&str]) -> Self {
        BracketExpr::Node(names.iter().map(|n| Self::leaf(n)).collect())
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = expr(&mut p)?;
        if p.peek().is_some() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Names of all leaves, left to right.
    pub fn leaves(&self) -> Vec<&str> {
        match self {
            BracketExpr::Leaf(n) => alloc::vec![n.as_str()],
            BracketExpr::Node(items) => items.iter().flat_map(|e| e.leaves()).collect(),
        }
    }

    pub fn evaluate<E, R>(&self, kind: Bracket, resolve: &mut R, exec: &E) -> Result<Mould, Error>
    where
        E: Executor,
        R: FnMut(&str) -> Result<Mould, Error>,
    {
        match self {
            BracketExpr::Leaf(n) => resolve(n),
            BracketExpr::Node(items) => {
                let values = items.iter().map(|e| e.evaluate(kind, resolve, exec)).collect::<Result<Vec<_>, _>>()?;
                let (last, rest) = values.split_last().expect("nodes have at least two items");
                let mut acc = last.clone();
                for f in rest.iter().rev() {
                    acc = bracket_with(kind, f, &acc, exec)?;
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for BracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketExpr::Leaf(n) => f.write_str(n),
            BracketExpr::Node(items) => {
                f.write_str("{")?;
                for (k, e) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")
            }
        }
    }
}

fn is_name_byte(c: u8) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, b':' | b'_' | b'-' | b'.' | b'^')
}

fn expr(p: &mut Parser) -> Result<BracketExpr, Error> {
    match p.peek() {
        Some(b'{') => {
            p.pos += 1;
            let mut items = alloc::vec![expr(p)?];
            loop {
                match p.peek() {
                    Some(b',') => {
                        p.pos += 1;
                        items.push(expr(p)?);
                    }
                    Some(b'}') => {
                        p.pos += 1;
                        break;
                    }
                    Some(_) => return Err(p.error("expected `,` or `}`")),
                    None => return Err(p.error("unclosed `{`")),
                }
            }
            if items.len() < 2 {
                return Err(p.error("a bracket needs at least two entries"));
            }
            Ok(BracketExpr::Node(items))
        }
        Some(c) if is_name_byte(c) => {
            let start = p.pos;
            while p.src.get(p.pos).is_some_and(|&c| is_name_byte(c)) {
                p.pos += 1;
            }
            let name = core::str::from_utf8(&p.src[start..p.pos]).expect("ascii");
            Ok(BracketExpr::Leaf(name.to_string()))
        }
        Some(c) => Err(p.error(&alloc::format!("unexpected `{}`", c as char))),
        None => Err(p.error("unexpected end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_text() {
        let e = BracketExpr::parse("{eta:3, {eta:3, eta:-1}}").unwrap();
        assert_eq!(
            e,
            BracketExpr::Node(alloc::vec![
                BracketExpr::leaf("eta:3"),
                BracketExpr::nested(&["eta:3", "eta:-1"])
            ])
        );
        assert_eq!(e.to_string(), "{eta:3, {eta:3, eta:-1}}");
        assert_eq!(BracketExpr::parse(" phi0 ").unwrap(), BracketExpr::leaf("phi0"));
        assert_eq!(e.leaves(), ["eta:3", "eta:3", "eta:-1"]);
    }

    #[test]
    fn rejects_malformed_text() {
        assert!(matches!(BracketExpr::parse("{eta:3}"), Err(Error::Syntax { .. })));
        assert!(matches!(BracketExpr::parse("{eta:3, eta:5"), Err(Error::Syntax { .. })));
        assert!(matches!(BracketExpr::parse("{eta:3, eta:5} x"), Err(Error::Syntax { .. })));
        assert!(matches!(BracketExpr::parse(""), Err(Error::Syntax { .. })));
    }
}
