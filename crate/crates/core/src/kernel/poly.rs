//! Sparse multivariate polynomials over the rationals.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::monomial::{Monomial, MAX_VARS};
use super::rational::{mulmod, powmod, Rational};

/// A polynomial in `x1..x8` with rational coefficients.
///
/// Terms are kept sorted by decreasing monomial in graded lexicographic order,
/// with no zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(Monomial::ONE, c)] }
        }
    }

    /// The variable `x_index`.
    pub fn var(index: usize) -> Self {
        Polynomial { terms: vec![(Monomial::var(index), Rational::one())] }
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Linear form `sum coeffs[i] * x_{i+1}`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut terms: Vec<_> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial::var(i + 1), c.clone()))
            .collect();
        terms.reverse();
        Polynomial { terms }
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    /// `sum c_k x_{vars[k]}` with small integer coefficients.
    pub fn linear_in(vars: &[usize], coeffs: &[i8]) -> Self {
        Self::from_terms(
            vars.iter()
                .zip(coeffs)
                .filter(|(_, &c)| c != 0)
                .map(|(&v, &c)| (Monomial::var(v), Rational::from(c as i64))),
        )
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut terms: Vec<_> = iter.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| core::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 += &c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((m, c)),
            }
        }
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map_or_else(Rational::zero, |t| t.1.clone())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(index) as u32).max().unwrap_or(0)
    }

    /// Highest variable index occurring, 0 for constants.
    pub fn max_var(&self) -> usize {
        self.terms.iter().map(|t| t.0.max_var()).max().unwrap_or(0)
    }

    /// Makes the leading coefficient 1; returns the normalized polynomial and the old leading coefficient.
    pub fn monic(&self) -> (Polynomial, Rational) {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return (self.clone(), Rational::one());
        }
        (self.scale(&lc.recip()), lc)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, a)| (*m, -a)).collect() }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { terms: out }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    /// Product via a heap merge over the rows of the shorter operand.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        match a.terms.len() {
            0 => return Polynomial::zero(),
            1 => return b.mul_monomial(&a.terms[0].0, &a.terms[0].1),
            _ => {}
        }
        let (a, b) = (&a.terms, &b.terms);
        let mut heap: BinaryHeap<(Monomial, usize)> = BinaryHeap::with_capacity(a.len());
        let mut next = vec![0usize; a.len()];
        for (i, t) in a.iter().enumerate() {
            heap.push((t.0.mul(&b[0].0), i));
        }
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(a.len() + b.len());
        while let Some((m, i)) = heap.pop() {
            let c = &a[i].1 * &b[next[i]].1;
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => {
                    if matches!(out.last(), Some(last) if last.1.is_zero()) {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
            next[i] += 1;
            if next[i] < b.len() {
                heap.push((a[i].0.mul(&b[next[i]].0), i));
            }
        }
        if matches!(out.last(), Some(last) if last.1.is_zero()) {
            out.pop();
        }
        Polynomial { terms: out }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Splits into coefficients of powers of `x_index`: `self = sum out[k] * x_index^k`.
    pub fn coefficients_in(&self, index: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(index) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(index) as usize].push((m.without(index), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut b| {
                // removing one variable can reorder monomials but never merges them
                b.sort_unstable_by_key(|t| core::cmp::Reverse(t.0));
                Polynomial { terms: b }
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(index: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let shift = if k == 0 { Monomial::ONE } else { Monomial::var_pow(index, k as u8) };
            acc = acc.add(&c.mul_monomial(&shift, &Rational::one()));
        }
        acc
    }

    /// Exact quotient by a monic polynomial of total degree one, or `None` if it does not divide.
    pub fn div_exact_linear(&self, linear: &Polynomial) -> Option<Polynomial> {
        let (lead, lc) = linear.leading()?;
        debug_assert!(lead.degree() == 1 && lc.is_one());
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let v = lead.max_var();
        let rest = linear.sub(&Polynomial::var(v));
        let n = self.coefficients_in(v);
        let m = n.len() - 1;
        if m == 0 {
            return None;
        }
        let mut q = vec![Polynomial::zero(); m];
        q[m - 1] = n[m].clone();
        for k in (1..m).rev() {
            q[k - 1] = n[k].sub(&rest.mul(&q[k]));
        }
        if n[0] != rest.mul(&q[0]) {
            return None;
        }
        Some(Polynomial::from_coefficients_in(v, &q))
    }

    /// Exact quotient `self / divisor` by leading-term division, or `None` if it does not divide.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = divisor.leading()?;
        if divisor.len() == 1 {
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                if !dm.divides(m) {
                    return None;
                }
                terms.push((dm.quotient_of(m), c * &inv));
            }
            return Some(Polynomial { terms });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        let inv = dc.recip();
        while let Some((rm, rc)) = rem.leading().cloned() {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quotient_of(&rm);
            let qc = &rc * &inv;
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(Polynomial { terms: quot })
    }

    /// Exact value at a point; `point[i]` is the value of `x_{i+1}`.
    ///
    /// Panics if the point does not cover every occurring variable.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let nv = self.max_var();
        assert!(point.len() >= nv, "point does not assign every variable");
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(nv);
        for (i, value) in point.iter().enumerate().take(nv) {
            let d = self.degree_in(i + 1) as usize;
            let mut row = Vec::with_capacity(d + 1);
            row.push(Rational::one());
            for k in 1..=d {
                let next = &row[k - 1] * value;
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate().take(nv) {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Value modulo the prime `p`; `None` if a coefficient denominator vanishes mod `p`.
    pub fn eval_mod(&self, p: u64, point: &[u64; MAX_VARS]) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.mod_prime(p)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = mulmod(t, powmod(point[i], e as u64, p), p);
                }
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }

    /// Simultaneous substitution `x_{i+1} -> images[i]`; variables past the end stay fixed.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        if self.is_constant() {
            return self.clone();
        }
        if let Some(perm) = scaled_permutation(images) {
            return self.substitute_scaled_permutation(&perm);
        }
        let v = self.max_var();
        horner(self.terms.clone(), v, images)
    }

    fn substitute_scaled_permutation(&self, perm: &[(usize, Rational)]) -> Polynomial {
        let mut out = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let mut exps = [0u8; MAX_VARS];
            let mut coeff = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (target, scale) = perm.get(i).cloned().unwrap_or((i + 1, Rational::one()));
                exps[target - 1] += e;
                if !scale.is_one() {
                    coeff = &coeff * &scale.pow(e as i32);
                }
            }
            out.push((Monomial::from_exponents(&exps), coeff));
        }
        out.sort_unstable_by_key(|t| core::cmp::Reverse(t.0));
        Polynomial { terms: out }
    }
}

/// Images that are each `c * x_j` for distinct `j` (and nonzero `c`).
fn scaled_permutation(images: &[Polynomial]) -> Option<Vec<(usize, Rational)>> {
    let mut seen = [false; MAX_VARS];
    let mut out = Vec::with_capacity(images.len());
    for img in images {
        match img.terms.as_slice() {
            [(m, c)] if m.degree() == 1 => {
                let j = m.max_var();
                if seen[j - 1] {
                    return None;
                }
                seen[j - 1] = true;
                out.push((j, c.clone()));
            }
            _ => return None,
        }
    }
    // fixed variables beyond the image list must not collide with targets
    for i in images.len()..MAX_VARS {
        if seen[i] {
            return None;
        }
    }
    Some(out)
}

fn horner(terms: Vec<(Monomial, Rational)>, v: usize, images: &[Polynomial]) -> Polynomial {
    if v == 0 {
        let c: Rational = terms.into_iter().map(|t| t.1).sum();
        return Polynomial::constant(c);
    }
    let deg = terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0) as usize;
    if deg == 0 {
        return horner(terms, v - 1, images);
    }
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
    for (m, c) in terms {
        buckets[m.exp(v) as usize].push((m.without(v), c));
    }
    let sub_results: Vec<Polynomial> = buckets
        .into_iter()
        .map(|b| {
            if b.is_empty() {
                Polynomial::zero()
            } else {
                let w = b.iter().map(|t| t.0.max_var()).max().unwrap_or(0);
                horner(b, w, images)
            }
        })
        .collect();
    let fixed = v > images.len();
    if fixed {
        let mut acc = Polynomial::zero();
        for (k, p) in sub_results.iter().enumerate() {
            if k == 0 {
                acc = acc.add(p);
            } else {
                acc = acc.add(&p.mul_monomial(&Monomial::var_pow(v, k as u8), &Rational::one()));
            }
        }
        return acc;
    }
    let image = &images[v - 1];
    let mut acc = Polynomial::zero();
    for p in sub_results.iter().rev() {
        acc = acc.mul(image).add(p);
    }
    acc
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the sorted term lists; only used to fix a canonical factor order.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let o = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
