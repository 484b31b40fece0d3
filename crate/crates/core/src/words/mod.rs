//! Words in the letters `x1, x2, ...` and their rational-function linear
//! combinations, with the shuffle and polar stuffle products.

mod parse;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::kernel::{Polynomial, RationalFunction, MAX_VARS};

pub use parse::{parse_word, parse_wordsum};

/// A word `x_{n_1} ... x_{n_r}`; letter `n` corresponds to variable `x_n`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Panics on a letter outside `1..=MAX_VARS`.
    pub fn new(letters: &[usize]) -> Self {
        for &n in letters {
            assert!((1..=MAX_VARS).contains(&n), "letter x{n} out of range");
        }
        Word(letters.iter().map(|&n| n as u8).collect())
    }

    /// `x_from x_{from+1} ... x_to`; empty if `from > to`.
    pub fn range(from: usize, to: usize) -> Self {
        let letters: Vec<usize> = (from..=to).collect();
        Self::new(&letters)
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&n| n as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().map(|&n| n as usize)
    }

    fn tail(&self) -> Word {
        Word(self.0[1..].to_vec())
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prepend(&self, letter: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter as u8);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The polynomials `x_{n_1}, ..., x_{n_r}`, ready for substitution.
    pub fn images(&self) -> Vec<Polynomial> {
        self.letters().map(Polynomial::var).collect()
    }
}

// shorter words first, then lexicographic
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for (k, n) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite sum `sum c_w w` with nonzero rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, RationalFunction>,
}

impl WordSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, RationalFunction::one())
    }

    pub fn term(w: Word, c: RationalFunction) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> RationalFunction {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        WordSum { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WordSum { terms: self.terms.iter().map(|(w, v)| (w.clone(), v.mul(c))).collect() }
    }

    pub fn prepend(&self, letter: usize) -> Self {
        WordSum { terms: self.terms.iter().map(|(w, c)| (w.prepend(letter), c.clone())).collect() }
    }

    pub fn reverse(&self) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.reverse(), c.clone());
        }
        out
    }

    /// Bilinear extension of [`shuffle`].
    pub fn shuffle(&self, other: &Self) -> Self {
        self.bilinear(other, shuffle)
    }

    /// Bilinear extension of [`stuffle`].
    pub fn stuffle(&self, other: &Self) -> Self {
        self.bilinear(other, stuffle)
    }

    fn bilinear(&self, other: &Self, product: fn(&Word, &Word) -> WordSum) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a.mul(b);
                for (w, c) in product(u, v).terms {
                    out.add_term(w, c.mul(&ab));
                }
            }
        }
        out
    }
}

impl From<Word> for WordSum {
    fn from(w: Word) -> Self {
        Self::word(w)
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let (negative, coeff) = match c.as_constant() {
                Some(q) if q.is_negative() => (true, RationalFunction::constant(-q)),
                _ => (false, c.clone()),
            };
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let simple = coeff.as_constant();
            match (w.is_empty(), simple) {
                (true, Some(q)) => write!(f, "{q}")?,
                (true, None) => write!(f, "({coeff})")?,
                (false, Some(q)) if q.is_one() => write!(f, "{w}")?,
                (false, Some(q)) => write!(f, "{q}*{w}")?,
                (false, None) => write!(f, "({coeff})*{w}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `u ⧢ v`.
pub fn shuffle(u: &Word, v: &Word) -> WordSum {
    if u.is_empty() {
        return WordSum::word(v.clone());
    }
    if v.is_empty() {
        return WordSum::word(u.clone());
    }
    let a = shuffle(&u.tail(), v).prepend(u.first().unwrap());
    let b = shuffle(u, &v.tail()).prepend(v.first().unwrap());
    a.add(&b)
}

/// `u ∗ v`, with the contraction term `(x_n - x_m)/(x_n - x_m) (u' ∗ v')`
/// expanded into two prepended-letter terms.
pub fn stuffle(u: &Word, v: &Word) -> WordSum {
    if u.is_empty() {
        return WordSum::word(v.clone());
    }
    if v.is_empty() {
        return WordSum::word(u.clone());
    }
    let n = u.first().unwrap();
    let m = v.first().unwrap();
    if n == m {
        return WordSum::zero();
    }
    let mut out = stuffle(&u.tail(), v).prepend(n);
    out = out.add(&stuffle(u, &v.tail()).prepend(m));
    let inner = stuffle(&u.tail(), &v.tail());
    if !inner.is_zero() {
        let pole = RationalFunction::one()
            .div(&RationalFunction::var(n).sub(&RationalFunction::var(m)))
            .expect("distinct letters");
        let contraction = inner.prepend(n).sub(&inner.prepend(m)).scale(&pole);
        out = out.add(&contraction);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(letters: &[usize]) -> Word {
        Word::new(letters)
    }

    #[test]
    fn shuffle_of_letters() {
        assert_eq!(shuffle(&w(&[1]), &w(&[2])).to_string(), "x1 x2 + x2 x1");
        assert_eq!(shuffle(&Word::empty(), &w(&[5, 2])).to_string(), "x5 x2");
        assert_eq!(shuffle(&w(&[1]), &w(&[2, 3])).to_string(), "x1 x2 x3 + x2 x1 x3 + x2 x3 x1");
        assert_eq!(shuffle(&w(&[1]), &w(&[1])).to_string(), "2*x1 x1");
    }

    #[test]
    fn stuffle_depth_two() {
        let s = stuffle(&w(&[1]), &w(&[2]));
        assert_eq!(s.to_string(), "((1)/(x1 - x2))*x1 + ((-1)/(x1 - x2))*x2 + x1 x2 + x2 x1");
        assert!(stuffle(&w(&[3]), &w(&[3])).is_zero());
    }

    #[test]
    fn stuffle_one_by_two() {
        let s = stuffle(&w(&[1]), &w(&[2, 3]));
        let p12 = RationalFunction::one().div(&RationalFunction::var(1).sub(&RationalFunction::var(2))).unwrap();
        let p13 = RationalFunction::one().div(&RationalFunction::var(1).sub(&RationalFunction::var(3))).unwrap();
        let mut expected = shuffle(&w(&[1]), &w(&[2, 3]));
        expected = expected.add(&WordSum::term(w(&[1, 3]), p12.clone()));
        expected = expected.add(&WordSum::term(w(&[2, 3]), p12.neg()));
        expected = expected.add(&WordSum::term(w(&[2, 1]), p13.clone()));
        expected = expected.add(&WordSum::term(w(&[2, 3]), p13.neg()));
        assert_eq!(s, expected);
    }

    #[test]
    fn reversal_is_a_shuffle_homomorphism() {
        let u = w(&[1]);
        let v = w(&[2, 3]);
        assert_eq!(shuffle(&u, &v).reverse(), shuffle(&u.reverse(), &v.reverse()));
        assert_eq!(w(&[1, 2, 3]).reverse(), w(&[3, 2, 1]));
        assert_eq!(Word::empty().reverse(), Word::empty());
    }
}
