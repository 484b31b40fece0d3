//! Rational functions in lowest terms.
//!
//! The denominator is stored factored as `rest * prod L_i^{e_i}` where the
//! `L_i` are distinct monic polynomials of total degree one and `rest` is a
//! monic polynomial (usually `1`) not divisible by any listed `L_i`. Every
//! denominator that mould calculus produces is a product of linear forms, so
//! reduction to lowest terms is trial division by the `L_i`; the general
//! multivariate GCD is only consulted for `rest`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};

use super::gcd::gcd;
use super::monomial::MAX_VARS;
use super::poly::Polynomial;
use super::rational::Rational;
use crate::Error;

const PRIME: u64 = (1u64 << 61) - 1;

// Fixed evaluation point for the divisibility pre-filter. A false "maybe
// divisible" only costs an exact division that then fails.
const PROBE: [u64; MAX_VARS] = [
    0x0a3b_5c71_9e2f_4d13,
    0x1c84_2d9f_60b7_3e55,
    0x03f1_7a2c_b9d8_e461,
    0x17d2_9e4b_0c63_a8f7,
    0x0b6e_4f18_d27a_95c3,
    0x1395_c2e7_4b0f_6d29,
    0x05a7_e3d1_8c49_b07f,
    0x1e0d_6b93_f5a2_4c81,
];

type Factors = Vec<(Polynomial, u32)>;

/// An element of `Q(x1, ..., x8)` in canonical reduced form.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    factors: Factors,
    rest: Polynomial,
}

/// Could `linear` divide `num`? `false` is definitive.
fn maybe_divisible(num: &Polynomial, linear: &Polynomial) -> bool {
    let v = linear.leading().map(|t| t.0.max_var()).unwrap_or(0);
    let tail = linear.sub(&Polynomial::var(v));
    let mut point = PROBE;
    let Some(t) = tail.eval_mod(PRIME, &point) else { return true };
    point[v - 1] = (PRIME - t) % PRIME;
    match num.eval_mod(PRIME, &point) {
        Some(val) => val == 0,
        None => true,
    }
}

/// Divides `num` by `linear` as often as possible, at most `limit` times.
fn cancel_linear(num: &mut Polynomial, linear: &Polynomial, limit: u32) -> u32 {
    let mut k = 0;
    while k < limit && !num.is_zero() && maybe_divisible(num, linear) {
        match num.div_exact_linear(linear) {
            Some(q) => {
                *num = q;
                k += 1;
            }
            None => break,
        }
    }
    k
}

/// Monic normalization of a degree-one polynomial: `l = lc * monic`.
fn monic_linear(l: &Polynomial) -> (Polynomial, Rational) {
    l.monic()
}

fn insert_factor(factors: &mut Factors, l: Polynomial, e: u32) {
    match factors.binary_search_by(|f| f.0.cmp(&l)) {
        Ok(pos) => factors[pos].1 += e,
        Err(pos) => factors.insert(pos, (l, e)),
    }
}

/// Splits off every factor `x_i` and every monic linear form with
/// coefficients in `{-1, 0, 1}`; the remainder carries the leading coefficient.
pub(crate) fn peel_linear_factors(p: Polynomial) -> (Factors, Polynomial) {
    let mut factors: Factors = Vec::new();
    let mut p = p;
    if p.is_zero() || p.is_constant() {
        return (factors, p);
    }
    let mut present: Vec<usize> = Vec::new();
    for v in 1..=MAX_VARS {
        let lowest = p.terms().iter().map(|t| t.0.exp(v)).min().unwrap_or(0);
        if lowest > 0 {
            let x = Polynomial::var(v);
            for _ in 0..lowest {
                p = p.div_exact_linear(&x).expect("variable divides every term");
            }
            factors.push((x, lowest as u32));
        }
        if p.degree_in(v) > 0 {
            present.push(v);
        }
    }
    let n = present.len();
    if n >= 2 && !p.is_constant() {
        // coefficient vectors in {-1,0,1}^n whose first nonzero entry is 1
        let mut digits = alloc::vec![0i8; n];
        'outer: loop {
            let mut k = n;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] <= 1 {
                    break;
                }
                digits[k] = -1;
            }
            let first = digits.iter().position(|&d| d != 0);
            if first.is_none() || digits[first.unwrap()] != 1 || digits.iter().filter(|&&d| d != 0).count() < 2 {
                continue;
            }
            let l = Polynomial::linear_in(&present, &digits);
            let e = cancel_linear(&mut p, &l, u32::MAX);
            if e > 0 {
                insert_factor(&mut factors, l, e);
                if p.degree().unwrap_or(0) <= 1 {
                    break;
                }
            }
        }
    }
    if p.degree() == Some(1) {
        let (m, lc) = p.monic();
        insert_factor(&mut factors, m, 1);
        p = Polynomial::constant(lc);
    }
    (factors, p)
}

fn multiply_by_factors(mut p: Polynomial, factors: &[(Polynomial, u32)]) -> Polynomial {
    for (l, e) in factors {
        for _ in 0..*e {
            p = p.mul(l);
        }
    }
    p
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }

    pub fn var(index: usize) -> Self {
        Self::from_poly(Polynomial::var(index))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, factors: Vec::new(), rest: Polynomial::one() }
    }

    /// `num / den` in lowest terms.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = den.as_constant() {
            return Ok(Self::from_poly(num.scale(&c.recip())));
        }
        if den.degree() == Some(1) {
            return Ok(Self::from_linear_factors(num, Rational::one(), alloc::vec![(den, 1)]));
        }
        Ok(Self::canonicalize(num, Vec::new(), den))
    }

    /// `scale * num / prod l^e` where each `l` has total degree one.
    pub fn from_linear_factors(num: Polynomial, scale: Rational, linear: Vec<(Polynomial, u32)>) -> Self {
        let mut c = scale;
        let mut factors: Factors = Vec::with_capacity(linear.len());
        for (l, e) in linear {
            debug_assert_eq!(l.degree(), Some(1));
            let (m, lc) = monic_linear(&l);
            if !lc.is_one() {
                c = &c * &lc.pow(-(e as i32));
            }
            insert_factor(&mut factors, m, e);
        }
        let mut num = num.scale(&c);
        let mut kept = Vec::with_capacity(factors.len());
        for (l, e) in factors {
            let k = cancel_linear(&mut num, &l, e);
            if k < e {
                kept.push((l, e - k));
            }
        }
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, factors: kept, rest: Polynomial::one() }
    }

    /// General reduction; used whenever a non-linear denominator part is involved.
    fn canonicalize(num: Polynomial, factors: Factors, rest: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut num = num;
        let mut factors = factors;
        let (peeled, mut rest) = peel_linear_factors(rest);
        for (l, e) in peeled {
            insert_factor(&mut factors, l, e);
        }
        if let Some(c) = rest.as_constant() {
            num = num.scale(&c.recip());
            rest = Polynomial::one();
        }
        let mut kept: Factors = Vec::with_capacity(factors.len());
        for (l, e) in factors {
            let k = cancel_linear(&mut num, &l, e);
            if k < e {
                kept.push((l, e - k));
            }
        }
        if !rest.is_one() {
            let g = gcd(&num, &rest);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                rest = rest.div_exact(&g).expect("gcd divides denominator");
            }
            let (m, lc) = rest.monic();
            if !lc.is_one() {
                num = num.scale(&lc.recip());
            }
            rest = m;
            if rest.degree() == Some(1) {
                insert_factor(&mut kept, rest, 1);
                rest = Polynomial::one();
            } else if let Some(c) = rest.as_constant() {
                num = num.scale(&c.recip());
                rest = Polynomial::one();
            }
        }
        RationalFunction { num, factors: kept, rest }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Expanded, monic denominator.
    pub fn denominator(&self) -> Polynomial {
        multiply_by_factors(self.rest.clone(), &self.factors)
    }

    /// Linear factors of the denominator with multiplicities.
    pub fn linear_factors(&self) -> &[(Polynomial, u32)] {
        &self.factors
    }

    /// Part of the denominator that is not a listed linear factor.
    pub fn residual_denominator(&self) -> &Polynomial {
        &self.rest
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.has_unit_denominator()
    }

    pub fn has_unit_denominator(&self) -> bool {
        self.factors.is_empty() && self.rest.is_one()
    }

    /// The value as a polynomial when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.has_unit_denominator().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.has_unit_denominator() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Highest variable index occurring anywhere.
    pub fn max_var(&self) -> usize {
        let f = self.factors.iter().map(|(l, _)| l.max_var()).max().unwrap_or(0);
        self.num.max_var().max(f).max(self.rest.max_var())
    }

    /// `deg numerator - deg denominator`; `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        let d: i64 = self.factors.iter().map(|(_, e)| *e as i64).sum::<i64>()
            + self.rest.degree().unwrap_or(0) as i64;
        Some(n - d)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), factors: self.factors.clone(), rest: self.rest.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), factors: self.factors.clone(), rest: self.rest.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Self::sum([self, other])
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if !(self.rest.is_one() && other.rest.is_one()) {
            let mut factors = self.factors.clone();
            for (l, e) in &other.factors {
                insert_factor(&mut factors, l.clone(), *e);
            }
            return Self::canonicalize(self.num.mul(&other.num), factors, self.rest.mul(&other.rest));
        }
        // cross-cancel before multiplying
        let mut na = self.num.clone();
        let mut nb = other.num.clone();
        let mut factors: Factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        for (l, e) in &other.factors {
            let k = cancel_linear(&mut na, l, *e);
            if k < *e {
                factors.push((l.clone(), e - k));
            }
        }
        let mut from_a: Factors = Vec::with_capacity(self.factors.len());
        for (l, e) in &self.factors {
            let k = cancel_linear(&mut nb, l, *e);
            if k < *e {
                from_a.push((l.clone(), e - k));
            }
        }
        for (l, e) in from_a {
            insert_factor(&mut factors, l, e);
        }
        RationalFunction { num: na.mul(&nb), factors, rest: Polynomial::one() }
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den = self.denominator();
        match self.num.degree() {
            Some(0) => Ok(Self::from_poly(den.scale(&self.num.leading_coeff().recip()))),
            Some(1) => Ok(Self::from_linear_factors(den, Rational::one(), alloc::vec![(self.num.clone(), 1)])),
            _ => Ok(Self::canonicalize(den, Vec::new(), self.num.clone())),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self, Error> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Sum of many terms over a common denominator, reduced once at the end.
    pub fn sum<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a RationalFunction>,
    {
        let mut groups: BTreeMap<&Factors, Polynomial> = BTreeMap::new();
        let mut general: Vec<&RationalFunction> = Vec::new();
        let mut attain: Vec<&Factors> = Vec::new();
        for f in items {
            if f.is_zero() {
                continue;
            }
            if !f.rest.is_one() {
                general.push(f);
                continue;
            }
            attain.push(&f.factors);
            match groups.get_mut(&f.factors) {
                Some(acc) => *acc = acc.add(&f.num),
                None => {
                    groups.insert(&f.factors, f.num.clone());
                }
            }
        }
        let linear = Self::sum_linear(groups, &attain);
        if general.is_empty() {
            return linear;
        }
        general.into_iter().fold(linear, |acc, f| acc.add_general(f))
    }

    fn sum_linear(groups: BTreeMap<&Factors, Polynomial>, members: &[&Factors]) -> Self {
        if groups.is_empty() {
            return Self::zero();
        }
        if groups.len() == 1 {
            let (factors, num) = groups.into_iter().next().unwrap();
            return Self::from_monic_factors(num, factors.clone());
        }
        // least common multiple of all denominators
        let mut lcm: BTreeMap<&Polynomial, u32> = BTreeMap::new();
        for factors in groups.keys() {
            for (l, e) in factors.iter() {
                let slot = lcm.entry(l).or_insert(0);
                *slot = (*slot).max(*e);
            }
        }
        let mut num = Polynomial::zero();
        for (factors, part) in &groups {
            if part.is_zero() {
                continue;
            }
            let mut p = part.clone();
            let mut i = 0;
            for (l, e) in &lcm {
                let have = match factors.get(i) {
                    Some((fl, fe)) if fl == *l => {
                        i += 1;
                        *fe
                    }
                    _ => 0,
                };
                for _ in have..*e {
                    p = p.mul(l);
                }
            }
            num = num.add(&p);
        }
        if num.is_zero() {
            return Self::zero();
        }
        // a factor can only cancel if at least two terms carry its top power
        let mut factors: Factors = Vec::with_capacity(lcm.len());
        for (l, e) in lcm {
            let hits = members
                .iter()
                .filter(|fs| fs.iter().any(|(fl, fe)| fl == l && *fe == e))
                .count();
            let k = if hits >= 2 { cancel_linear(&mut num, l, e) } else { 0 };
            if k < e {
                factors.push((l.clone(), e - k));
            }
        }
        RationalFunction { num, factors, rest: Polynomial::one() }
    }

    fn from_monic_factors(mut num: Polynomial, factors: Factors) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut kept = Vec::with_capacity(factors.len());
        for (l, e) in factors {
            let k = cancel_linear(&mut num, &l, e);
            if k < e {
                kept.push((l, e - k));
            }
        }
        RationalFunction { num, factors: kept, rest: Polynomial::one() }
    }

    fn add_general(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        let mut factors = self.factors.clone();
        for (l, e) in &other.factors {
            match factors.binary_search_by(|f| f.0.cmp(l)) {
                Ok(pos) => factors[pos].1 = factors[pos].1.max(*e),
                Err(pos) => factors.insert(pos, (l.clone(), *e)),
            }
        }
        let g = gcd(&self.rest, &other.rest);
        let rest = self.rest.mul(&other.rest).div_exact(&g).expect("gcd divides");
        let complement = |f: &Self| -> Polynomial {
            let mut p = f.num.mul(&rest.div_exact(&f.rest).expect("rest divides lcm"));
            for (l, e) in &factors {
                let have = f
                    .factors
                    .iter()
                    .find(|(fl, _)| fl == l)
                    .map_or(0, |(_, fe)| *fe);
                for _ in have..*e {
                    p = p.mul(l);
                }
            }
            p
        };
        let num = complement(self).add(&complement(other));
        Self::canonicalize(num, factors, rest)
    }

    /// Simultaneous substitution `x_{i+1} -> images[i]` of polynomials of degree at most one.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self, Error> {
        let mut num = self.num.substitute(images);
        let mut scale = Rational::one();
        let mut factors: Factors = Vec::with_capacity(self.factors.len());
        for (l, e) in &self.factors {
            let s = l.substitute(images);
            if let Some(c) = s.as_constant() {
                if c.is_zero() {
                    return Err(Error::Pole);
                }
                scale = &scale * &c.pow(-(*e as i32));
                continue;
            }
            debug_assert_eq!(s.degree(), Some(1));
            let (m, lc) = monic_linear(&s);
            if !lc.is_one() {
                scale = &scale * &lc.pow(-(*e as i32));
            }
            insert_factor(&mut factors, m, *e);
        }
        num = num.scale(&scale);
        if self.rest.is_one() {
            return Ok(Self::from_monic_factors(num, factors));
        }
        let rest = self.rest.substitute(images);
        if rest.is_zero() {
            return Err(Error::Pole);
        }
        Ok(Self::canonicalize(num, factors, rest))
    }

    /// Exact value at a point; `point[i]` is the value of `x_{i+1}`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, Error> {
        if point.len() < self.max_var() {
            return Err(Error::UnassignedVariable(point.len() + 1));
        }
        let mut den = self.rest.eval(point);
        for (l, e) in &self.factors {
            den = &den * &l.eval(point).pow(*e as i32);
        }
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(&self.num.eval(point) / &den)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.num != other.num {
            return false;
        }
        if self.factors == other.factors && self.rest == other.rest {
            return true;
        }
        if self.rest.is_one() && other.rest.is_one() {
            return false;
        }
        self.denominator() == other.denominator()
    }
}

impl Eq for RationalFunction {}

impl Hash for RationalFunction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

/// Canonical text: `<num>` when the denominator is 1, else `(<num>)/(<den>)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_unit_denominator() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.denominator())
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x(i: usize) -> RationalFunction {
        RationalFunction::var(i)
    }

    fn px(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn k(n: i64) -> RationalFunction {
        RationalFunction::from_integer(n)
    }

    #[test]
    fn opposite_poles_cancel() {
        let a = x(1).div(&x(1).sub(&x(2))).unwrap();
        let b = x(2).div(&x(2).sub(&x(1))).unwrap();
        assert!(a.add(&b).is_one());
    }

    #[test]
    fn inverse_pair() {
        assert!(k(1).div(&x(1)).unwrap().mul(&x(1)).is_one());
    }

    #[test]
    fn difference_of_squares() {
        let n = x(1).mul(&x(1)).sub(&x(2).mul(&x(2)));
        let q = n.div(&x(1).sub(&x(2))).unwrap();
        assert_eq!(q.to_string(), "x1 + x2");
        assert_eq!(q, x(1).add(&x(2)));
    }

    #[test]
    fn canonical_text_has_monic_denominator() {
        let f = x(1).sub(&x(2)).div(&k(12).mul(&x(1)).mul(&x(2)).mul(&x(1).add(&x(2)))).unwrap();
        assert_eq!(f.to_string(), "(1/12*x1 - 1/12*x2)/(x1^2*x2 + x1*x2^2)");
        assert_eq!(f.total_degree(), Some(-2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(x(1).div(&RationalFunction::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn general_denominators_reduce() {
        let q = px(1).mul(&px(1)).add(&px(2).mul(&px(2))).add(&Polynomial::one());
        let a = RationalFunction::new(px(1).mul(&q), q.mul(&px(2))).unwrap();
        assert_eq!(a, x(1).div(&x(2)).unwrap());
        let b = RationalFunction::new(Polynomial::one(), q.clone()).unwrap();
        let s = b.add(&b.neg());
        assert!(s.is_zero());
        let t = b.mul(&RationalFunction::from_poly(q.clone()));
        assert!(t.is_one());
    }

    #[test]
    fn mixed_representations_compare_equal() {
        // 1/((x1-x2)(x1+x2)) built from linear factors vs from the expanded product
        let lin = k(1).div(&x(1).sub(&x(2))).unwrap().div(&x(1).add(&x(2))).unwrap();
        let expanded = px(1).mul(&px(1)).sub(&px(2).mul(&px(2)));
        let gen = RationalFunction::new(Polynomial::one(), expanded).unwrap();
        assert_eq!(lin, gen);
        assert!(lin.sub(&gen).is_zero());
    }

    #[test]
    fn substitution_detects_poles() {
        let f = k(1).div(&x(1).sub(&x(2))).unwrap();
        assert_eq!(f.substitute(&[px(2), px(2)]), Err(Error::Pole));
        let g = x(1).sub(&x(3)).div(&x(1).sub(&x(2))).unwrap();
        let h = g.substitute(&[px(1), px(2), px(2)]).unwrap();
        assert!(h.is_one());
    }

    #[test]
    fn point_evaluation() {
        let f = x(1).sub(&x(2)).div(&k(12).mul(&x(1)).mul(&x(2)).mul(&x(1).add(&x(2)))).unwrap();
        assert_eq!(f.evaluate(&[Rational::from(1), Rational::from(2)]).unwrap(), Rational::new(-1, 72));
        let g = k(1).div(&x(1)).unwrap();
        assert_eq!(g.evaluate(&[Rational::zero()]), Err(Error::PoleAtPoint));
    }

    #[test]
    fn batch_sum_matches_pairwise() {
        let terms: Vec<RationalFunction> = (1..6)
            .map(|i| k(i).div(&x(1).sub(&k(i).mul(&x(2)))).unwrap().mul(&x(3)))
            .collect();
        let pairwise = terms.iter().fold(RationalFunction::zero(), |a, b| a.add(b));
        assert_eq!(RationalFunction::sum(terms.iter()), pairwise);
    }
}
