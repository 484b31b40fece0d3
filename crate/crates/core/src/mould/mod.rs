//! Depth-truncated moulds `f = (f^(0), f^(1)(x1), f^(2)(x1, x2), ...)`.

mod checks;
mod report;

use alloc::vec::Vec;

use crate::kernel::{Polynomial, Rational, RationalFunction, MAX_VARS};
use crate::words::WordSum;
use crate::Error;

pub use checks::{
    check_dm, check_dm_with, check_in_v, check_ls, check_ls_with, check_v_flat, check_weight, lemma_reversal_check,
    Executor, Sequential,
};
pub use report::{Instance, VerificationReport};

/// A mould truncated at `max_depth`; components above it are unknown, not zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mould {
    depth0: Rational,
    components: Vec<RationalFunction>,
    weight: Option<i64>,
}

impl Mould {
    /// The zero mould. Panics if `max_depth` exceeds the variable budget.
    pub fn zero(max_depth: usize) -> Self {
        assert!(max_depth <= MAX_VARS, "depth {max_depth} exceeds {MAX_VARS}");
        Mould { depth0: Rational::zero(), components: alloc::vec![RationalFunction::zero(); max_depth], weight: None }
    }

    /// The unit `1 = (1, 0, 0, ...)`.
    pub fn unit(max_depth: usize) -> Self {
        let mut m = Self::zero(max_depth);
        m.depth0 = Rational::one();
        m
    }

    /// `f` placed in depth `depth`, zero elsewhere.
    pub fn concentrated(depth: usize, f: RationalFunction, max_depth: usize) -> Self {
        let mut m = Self::zero(max_depth);
        if depth <= max_depth {
            m.set(depth, f);
        }
        m
    }

    /// Builds from depth-0 value and components for depths `1..=components.len()`.
    pub fn from_components(depth0: Rational, components: Vec<RationalFunction>) -> Result<Self, Error> {
        if components.len() > MAX_VARS {
            return Err(Error::DepthOverflow { depth: components.len(), max: MAX_VARS });
        }
        for (k, f) in components.iter().enumerate() {
            if f.max_var() > k + 1 {
                return Err(Error::StrayVariable { depth: k + 1, var: f.max_var() });
            }
        }
        Ok(Mould { depth0, components, weight: None })
    }

    pub fn with_weight(mut self, weight: Option<i64>) -> Self {
        self.weight = weight;
        self
    }

    pub fn max_depth(&self) -> usize {
        self.components.len()
    }

    pub fn weight(&self) -> Option<i64> {
        self.weight
    }

    pub fn depth0(&self) -> &Rational {
        &self.depth0
    }

    pub fn set_depth0(&mut self, c: Rational) {
        self.depth0 = c;
    }

    /// `f^(r)`; zero above the truncation depth.
    pub fn component(&self, r: usize) -> RationalFunction {
        match r {
            0 => RationalFunction::constant(self.depth0.clone()),
            _ => self.components.get(r - 1).cloned().unwrap_or_default(),
        }
    }

    pub fn get(&self, r: usize) -> &RationalFunction {
        &self.components[r - 1]
    }

    /// Sets `f^(r)` for `1 <= r <= max_depth`.
    pub fn set(&mut self, r: usize, f: RationalFunction) {
        debug_assert!(f.max_var() <= r, "component at depth {r} uses x{}", f.max_var());
        self.components[r - 1] = f;
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    /// In `L` (depth-0 part zero).
    pub fn is_lie(&self) -> bool {
        self.depth0.is_zero()
    }

    /// In `G` (depth-0 part one).
    pub fn is_group(&self) -> bool {
        self.depth0.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.depth0.is_zero() && self.components.iter().all(|f| f.is_zero())
    }

    /// Smallest depth with a nonzero component (0 for a nonzero depth-0 part).
    pub fn lowest_depth(&self) -> Option<usize> {
        if !self.depth0.is_zero() {
            return Some(0);
        }
        self.components.iter().position(|f| !f.is_zero()).map(|k| k + 1)
    }

    /// Keeps depths `<= depth`, padding with zeros if needed.
    pub fn truncate(&self, depth: usize) -> Self {
        let mut components = self.components.clone();
        components.resize(depth, RationalFunction::zero());
        Mould { depth0: self.depth0.clone(), components, weight: self.weight }
    }

    /// The same mould with only depth `r` kept.
    pub fn part(&self, r: usize) -> Self {
        let mut m = Self::zero(self.max_depth());
        if r == 0 {
            m.depth0 = self.depth0.clone();
        } else {
            m.set(r, self.component(r));
        }
        m.weight = self.weight;
        m
    }

    fn zip(&self, other: &Self, op: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction) -> Self {
        let d = self.max_depth().min(other.max_depth());
        let components = (1..=d).map(|r| op(self.get(r), other.get(r))).collect();
        let weight = if self.weight == other.weight { self.weight } else { None };
        Mould { depth0: Rational::zero(), components, weight }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.zip(other, |a, b| a.add(b));
        m.depth0 = &self.depth0 + &other.depth0;
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut m = self.zip(other, |a, b| a.sub(b));
        m.depth0 = &self.depth0 - &other.depth0;
        m
    }

    pub fn neg(&self) -> Self {
        self.map(|_, f| f.neg()).with_depth0(-self.depth0.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|_, f| f.scale(c)).with_depth0(&self.depth0 * c)
    }

    fn with_depth0(mut self, c: Rational) -> Self {
        self.depth0 = c;
        self
    }

    /// Applies `op(r, f^(r))` to every component; depth 0 is kept.
    pub fn map(&self, op: impl Fn(usize, &RationalFunction) -> RationalFunction) -> Self {
        let components = self.components.iter().enumerate().map(|(k, f)| op(k + 1, f)).collect();
        Mould { depth0: self.depth0.clone(), components, weight: self.weight }
    }

    fn substitute_each(&self, images: impl Fn(usize) -> Vec<Polynomial>) -> Self {
        self.map(|r, f| {
            if f.is_zero() {
                return f.clone();
            }
            f.substitute(&images(r)).expect("triangular substitution has no poles")
        })
    }

    /// `(f^♯)^(r) = f^(r)(x1, x1 + x2, ..., x1 + ... + xr)`.
    pub fn sharp(&self) -> Self {
        self.substitute_each(sharp_images)
    }

    /// `(f^♭)^(r) = f^(r)(x1, x2 - x1, ..., xr - x_{r-1})`.
    pub fn flat(&self) -> Self {
        self.substitute_each(flat_images)
    }

    /// `anti(f)^(r) = f^(r)(xr, ..., x1)`.
    pub fn anti(&self) -> Self {
        self.substitute_each(reverse_images)
    }

    /// `φ(f)^(r) = (-1)^r f^(r)(xr, ..., x1)`.
    pub fn varphi(&self) -> Self {
        self.substitute_each(reverse_images).map(|r, f| if r % 2 == 1 { f.neg() } else { f.clone() })
    }

    /// `swap♭(f)^(r) = f^(r)(xr, x_{r-1} - xr, ..., x1 - x2)`.
    pub fn swap_flat(&self) -> Self {
        self.substitute_each(|r| {
            (0..r)
                .map(|k| {
                    let a = r - k;
                    if k == 0 {
                        Polynomial::var(a)
                    } else {
                        Polynomial::var(a).sub(&Polynomial::var(a + 1))
                    }
                })
                .collect()
        })
    }

    /// `f(s)` under the convention `f(x_{n1} ... x_{nr}) = f^(r)(x_{n1}, ..., x_{nr})`.
    pub fn evaluate(&self, s: &WordSum) -> Result<RationalFunction, Error> {
        let mut parts = Vec::with_capacity(s.len());
        for (w, c) in s.terms() {
            let r = w.len();
            if r > self.max_depth() {
                return Err(Error::DepthOverflow { depth: r, max: self.max_depth() });
            }
            let value = if r == 0 {
                RationalFunction::constant(self.depth0.clone())
            } else {
                let f = self.get(r);
                if f.is_zero() {
                    continue;
                }
                f.substitute(&w.images())?
            };
            parts.push(value.mul(c));
        }
        Ok(RationalFunction::sum(parts.iter()))
    }

    /// Do the two moulds agree in depths `from..=to`?
    pub fn agrees_with(&self, other: &Self, from: usize, to: usize) -> bool {
        (from..=to).all(|r| self.component(r) == other.component(r))
    }
}

pub(crate) fn sharp_images(r: usize) -> Vec<Polynomial> {
    let mut acc = Polynomial::zero();
    (1..=r)
        .map(|i| {
            acc = acc.add(&Polynomial::var(i));
            acc.clone()
        })
        .collect()
}

pub(crate) fn flat_images(r: usize) -> Vec<Polynomial> {
    (1..=r)
        .map(|i| if i == 1 { Polynomial::var(1) } else { Polynomial::var(i).sub(&Polynomial::var(i - 1)) })
        .collect()
}

fn reverse_images(r: usize) -> Vec<Polynomial> {
    (1..=r).map(|i| Polynomial::var(r + 1 - i)).collect()
}
