//! The preari and linearized Ihara actions, their brackets, exponentials,
//! logarithms and adjoint actions.

use alloc::vec::Vec;

use crate::kernel::{factorial, Polynomial, Rational, RationalFunction};
use crate::mould::{Executor, Mould, Sequential};
use crate::Error;

/// Which pre-Lie action (and hence which bracket) to use.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bracket {
    /// `⊛_ari` and `{,}_ari`.
    Ari,
    /// The linearized Ihara action `∘` and `{,}`.
    Ihara,
}

impl Bracket {
    pub fn name(self) -> &'static str {
        match self {
            Bracket::Ari => "ari",
            Bracket::Ihara => "ihara",
        }
    }
}

fn var(i: usize) -> Polynomial {
    if i == 0 {
        Polynomial::zero()
    } else {
        Polynomial::var(i)
    }
}

fn block_sum(from: usize, to: usize) -> Polynomial {
    (from..=to).fold(Polynomial::zero(), |acc, j| acc.add(&Polynomial::var(j)))
}

fn shifted(f: &RationalFunction, shift: usize, r: usize) -> RationalFunction {
    if shift == 0 {
        return f.clone();
    }
    let images: Vec<Polynomial> = (1..=r).map(|j| Polynomial::var(j + shift)).collect();
    f.substitute(&images).expect("shift has no poles")
}

fn product(f: RationalFunction, g: &RationalFunction, images: &[Polynomial]) -> RationalFunction {
    let g = g.substitute(images).expect("linear change of variables has no poles");
    f.mul(&g)
}

/// An action with the preari boundary reading made explicit.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) enum Action {
    Preari { boundary: bool },
    Ihara,
}

impl From<Bracket> for Action {
    fn from(kind: Bracket) -> Self {
        match kind {
            Bracket::Ari => Action::Preari { boundary: true },
            Bracket::Ihara => Action::Ihara,
        }
    }
}

/// The summands of `f^(r) ⊛_ari g^(s)`, already signed.
fn preari_terms(f: &RationalFunction, r: usize, g: &RationalFunction, s: usize, boundary: bool, out: &mut Vec<RationalFunction>) {
    // block absorbed into its right neighbour
    for i in 0..s {
        let images: Vec<Polynomial> = (1..=s)
            .map(|k| match k.cmp(&(i + 1)) {
                core::cmp::Ordering::Less => Polynomial::var(k),
                core::cmp::Ordering::Equal => block_sum(i + 1, i + r + 1),
                core::cmp::Ordering::Greater => Polynomial::var(k + r),
            })
            .collect();
        out.push(product(shifted(f, i, r), g, &images));
    }
    // block appended after g's arguments
    if boundary {
        out.push(shifted(f, s, r).mul(g));
    }
    // block absorbed into its left neighbour
    for i in 1..=s {
        let images: Vec<Polynomial> = (1..=s)
            .map(|k| match k.cmp(&i) {
                core::cmp::Ordering::Less => Polynomial::var(k),
                core::cmp::Ordering::Equal => block_sum(i, i + r),
                core::cmp::Ordering::Greater => Polynomial::var(k + r),
            })
            .collect();
        out.push(product(shifted(f, i, r), g, &images).neg());
    }
}

/// The summands of `f^(r) ∘ g^(s)`, already signed; `x0 = 0`.
fn ihara_terms(f: &RationalFunction, r: usize, g: &RationalFunction, s: usize, out: &mut Vec<RationalFunction>) {
    for i in 0..=s {
        let fi: Vec<Polynomial> = (1..=r).map(|j| Polynomial::var(i + j).sub(&var(i))).collect();
        let fv = f.substitute(&fi).expect("difference substitution has no poles");
        let gi: Vec<Polynomial> = (1..=s).map(|k| Polynomial::var(if k <= i { k } else { k + r })).collect();
        out.push(product(fv, g, &gi));
    }
    for i in 1..=s {
        let fi: Vec<Polynomial> = (1..=r).map(|j| Polynomial::var(i + r).sub(&var(i + r - j))).collect();
        let fv = f.substitute(&fi).expect("difference substitution has no poles");
        let gi: Vec<Polynomial> = (1..=s).map(|k| Polynomial::var(if k < i { k } else { k + r })).collect();
        let t = product(fv, g, &gi);
        out.push(if r % 2 == 1 { t.neg() } else { t });
    }
}

fn terms(action: Action, f: &RationalFunction, r: usize, g: &RationalFunction, s: usize, out: &mut Vec<RationalFunction>) {
    if f.is_zero() || g.is_zero() {
        return;
    }
    match action {
        Action::Preari { boundary } => preari_terms(f, r, g, s, boundary, out),
        Action::Ihara => ihara_terms(f, r, g, s, out),
    }
}

/// `f^(r) ⊛ g^(s)` (or `∘`), a function of `x1..x_{r+s}`.
pub fn action_component(kind: Bracket, f: &RationalFunction, r: usize, g: &RationalFunction, s: usize) -> RationalFunction {
    component(kind.into(), f, r, g, s)
}

pub(crate) fn component(action: Action, f: &RationalFunction, r: usize, g: &RationalFunction, s: usize) -> RationalFunction {
    let mut out = Vec::with_capacity(2 * s + 1);
    terms(action, f, r, g, s, &mut out);
    RationalFunction::sum(out.iter())
}

/// `{f^(r), g^(s)}` as a function of `x1..x_{r+s}`.
pub fn bracket_component(kind: Bracket, f: &RationalFunction, r: usize, g: &RationalFunction, s: usize) -> RationalFunction {
    let mut out = Vec::with_capacity(4 * (r + s) + 2);
    terms(kind.into(), f, r, g, s, &mut out);
    let split = out.len();
    terms(kind.into(), g, s, f, r, &mut out);
    for t in &mut out[split..] {
        *t = t.neg();
    }
    RationalFunction::sum(out.iter())
}

fn require_lie(f: &Mould) -> Result<(), Error> {
    if f.is_lie() {
        Ok(())
    } else {
        Err(Error::WrongDepthZero { expected: "0".into(), found: alloc::format!("{}", f.depth0()) })
    }
}

fn combine_weights(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

/// Depth components `1..=depth` of `sum_k sign_k (f_k ⋆ g_k)` over the listed pairs.
fn bilinear<E: Executor>(kind: Bracket, pairs: &[(&Mould, &Mould, bool)], depth: usize, exec: &E) -> Vec<RationalFunction> {
    let mut jobs = Vec::new();
    for d in 2..=depth {
        for r in 1..d {
            for (p, &(f, g, _)) in pairs.iter().enumerate() {
                if !f.get(r).is_zero() && !g.get(d - r).is_zero() {
                    jobs.push((d, r, p));
                }
            }
        }
    }
    let parts = exec.run(jobs.len(), |k| {
        let (d, r, p) = jobs[k];
        let (f, g, negate) = pairs[p];
        let v = action_component(kind, f.get(r), r, g.get(d - r), d - r);
        if negate {
            v.neg()
        } else {
            v
        }
    });
    let mut by_depth: Vec<Vec<RationalFunction>> = alloc::vec![Vec::new(); depth + 1];
    for ((d, _, _), v) in jobs.iter().zip(parts) {
        by_depth[*d].push(v);
    }
    (1..=depth).map(|d| RationalFunction::sum(by_depth[d].iter())).collect()
}

/// `f ⊛_ari g` or `f ∘ g`, truncated at the smaller depth.
pub fn act(kind: Bracket, f: &Mould, g: &Mould) -> Result<Mould, Error> {
    act_with(kind, f, g, &Sequential)
}

pub fn act_with<E: Executor>(kind: Bracket, f: &Mould, g: &Mould, exec: &E) -> Result<Mould, Error> {
    require_lie(f)?;
    require_lie(g)?;
    let depth = f.max_depth().min(g.max_depth());
    let comps = bilinear(kind, &[(f, g, false)], depth, exec);
    Ok(Mould::from_components(Rational::zero(), comps)?.with_weight(combine_weights(f.weight(), g.weight())))
}

pub fn preari(f: &Mould, g: &Mould) -> Result<Mould, Error> {
    act(Bracket::Ari, f, g)
}

pub fn ihara_preaction(f: &Mould, g: &Mould) -> Result<Mould, Error> {
    act(Bracket::Ihara, f, g)
}

/// `f ⋆ g - g ⋆ f`.
pub fn bracket(kind: Bracket, f: &Mould, g: &Mould) -> Result<Mould, Error> {
    bracket_with(kind, f, g, &Sequential)
}

pub fn bracket_with<E: Executor>(kind: Bracket, f: &Mould, g: &Mould, exec: &E) -> Result<Mould, Error> {
    require_lie(f)?;
    require_lie(g)?;
    let depth = f.max_depth().min(g.max_depth());
    let comps = bilinear(kind, &[(f, g, false), (g, f, true)], depth, exec);
    Ok(Mould::from_components(Rational::zero(), comps)?.with_weight(combine_weights(f.weight(), g.weight())))
}

pub fn ari_bracket(f: &Mould, g: &Mould) -> Result<Mould, Error> {
    bracket(Bracket::Ari, f, g)
}

pub fn ihara_bracket(f: &Mould, g: &Mould) -> Result<Mould, Error> {
    bracket(Bracket::Ihara, f, g)
}

/// Right-nested bracket `{f1, {f2, ..., fn}}`.
pub fn nested_bracket<E: Executor>(kind: Bracket, items: &[&Mould], exec: &E) -> Result<Mould, Error> {
    let (last, rest) = items.split_last().expect("at least one item");
    let mut acc = (*last).clone();
    for f in rest.iter().rev() {
        acc = bracket_with(kind, f, &acc, exec)?;
    }
    Ok(acc)
}

/// Powers `f^n = f ⋆ f^{n-1}` tracked depth by depth: `table[n][d]`.
struct Powers {
    table: Vec<Vec<RationalFunction>>,
}

impl Powers {
    fn new(depth: usize) -> Self {
        Powers { table: alloc::vec![alloc::vec![RationalFunction::zero(); depth + 1]; depth + 1] }
    }

    /// Fills `f^n` at depth `d` for `n >= 2` from lower depths; returns `sum_n f^n(d) / n!`.
    fn advance<E: Executor>(&mut self, action: Action, d: usize, exec: &E) -> RationalFunction {
        let table = &self.table;
        let jobs: Vec<(usize, usize)> = (2..=d)
            .flat_map(|n| (1..d).map(move |r| (n, r)))
            .filter(|&(n, r)| !table[1][r].is_zero() && !table[n - 1][d - r].is_zero())
            .collect();
        let parts = exec.run(jobs.len(), |k| {
            let (n, r) = jobs[k];
            component(action, &table[1][r], r, &table[n - 1][d - r], d - r)
        });
        let mut by_power: Vec<Vec<RationalFunction>> = alloc::vec![Vec::new(); d + 1];
        for ((n, _), v) in jobs.iter().zip(parts) {
            by_power[*n].push(v);
        }
        let mut scaled = Vec::with_capacity(d);
        for n in 2..=d {
            let v = RationalFunction::sum(by_power[n].iter());
            scaled.push(v.scale(&factorial(n).recip()));
            self.table[n][d] = v;
        }
        RationalFunction::sum(scaled.iter())
    }
}

/// `1 + sum f^n / n!`.
pub fn exp(kind: Bracket, f: &Mould) -> Result<Mould, Error> {
    exp_with(kind, f, &Sequential)
}

pub fn exp_with<E: Executor>(kind: Bracket, f: &Mould, exec: &E) -> Result<Mould, Error> {
    require_lie(f)?;
    let depth = f.max_depth();
    let mut powers = Powers::new(depth);
    let mut out = Mould::unit(depth);
    for d in 1..=depth {
        powers.table[1][d] = f.get(d).clone();
        let higher = powers.advance(kind.into(), d, exec);
        out.set(d, f.get(d).add(&higher));
    }
    Ok(out.with_weight(f.weight()))
}

/// Inverse of [`exp`], solved depth by depth.
pub fn log(kind: Bracket, big: &Mould) -> Result<Mould, Error> {
    log_with(kind, big, &Sequential)
}

pub fn log_with<E: Executor>(kind: Bracket, big: &Mould, exec: &E) -> Result<Mould, Error> {
    log_action(kind.into(), big, exec)
}

pub(crate) fn log_action<E: Executor>(action: Action, big: &Mould, exec: &E) -> Result<Mould, Error> {
    if !big.is_group() {
        return Err(Error::WrongDepthZero { expected: "1".into(), found: alloc::format!("{}", big.depth0()) });
    }
    let depth = big.max_depth();
    let mut powers = Powers::new(depth);
    let mut out = Mould::zero(depth);
    for d in 1..=depth {
        let higher = powers.advance(action, d, exec);
        let v = big.get(d).sub(&higher);
        powers.table[1][d] = v.clone();
        out.set(d, v);
    }
    Ok(out.with_weight(big.weight()))
}

/// `ad^n(g)(f) = {ad^{n-1}(g)(f), g}`.
pub fn ad_pow(kind: Bracket, g: &Mould, f: &Mould, n: usize) -> Result<Mould, Error> {
    let mut acc = f.clone();
    for _ in 0..n {
        acc = bracket(kind, &acc, g)?;
    }
    Ok(acc)
}

/// `sum_n c_n ad^n(g)(f)` with `c_n = 1/n!` (or `1` when `factorial` is false).
pub fn ad_series_with<E: Executor>(kind: Bracket, g: &Mould, f: &Mould, factorial_weights: bool, exec: &E) -> Result<Mould, Error> {
    require_lie(g)?;
    require_lie(f)?;
    let depth = f.max_depth().min(g.max_depth());
    let mut term = f.truncate(depth);
    let mut total = term.clone();
    let mut n = 0;
    while !term.is_zero() {
        n += 1;
        term = bracket_with(kind, &term, g, exec)?;
        let c = if factorial_weights { factorial(n).recip() } else { Rational::one() };
        total = total.add(&term.scale(&c));
        if n > depth {
            break;
        }
    }
    Ok(total.with_weight(f.weight()))
}

/// `Ad(G)(f) = sum ad^n(log G)(f) / n!`.
pub fn adjoint(kind: Bracket, big: &Mould, f: &Mould) -> Result<Mould, Error> {
    let g = log(kind, big)?;
    ad_series_with(kind, &g, f, true, &Sequential)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse::parse_ratfun;

    fn rf(s: &str) -> RationalFunction {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn sigma3_from_ihara() {
        let f = Mould::concentrated(1, rf("x1^2"), 2);
        let g = Mould::concentrated(1, rf("-1/(2*x1)"), 2);
        let b = ihara_bracket(&f, &g).unwrap();
        assert_eq!(b.get(2), &rf("-2*x1 + x2"));
    }

    #[test]
    fn preari_depth_two_expansion() {
        // f(x1) f(x1 + x2) + f(x2) f(x1) - f(x2) f(x1 + x2)
        let f = Mould::concentrated(1, rf("-1/(2*x1)"), 2);
        let p = preari(&f, &f).unwrap();
        let expected = rf("1/(4*x1*(x1 + x2)) + 1/(4*x1*x2) - 1/(4*x2*(x1 + x2))");
        assert_eq!(p.get(2), &expected);
    }

    #[test]
    fn brackets_are_antisymmetric() {
        let f = Mould::concentrated(1, rf("x1^2"), 3).add(&Mould::concentrated(2, rf("1/(x1 - x2)"), 3));
        for kind in [Bracket::Ari, Bracket::Ihara] {
            assert!(bracket(kind, &f, &f).unwrap().is_zero());
        }
    }

    #[test]
    fn log_inverts_exp() {
        let mut f = Mould::zero(4);
        f.set(1, rf("1/x1"));
        f.set(2, rf("x1/(x2*(x1 + x2))"));
        for kind in [Bracket::Ari, Bracket::Ihara] {
            let big = exp(kind, &f).unwrap();
            assert_eq!(log(kind, &big).unwrap(), f);
            let l = log(kind, &big).unwrap();
            assert_eq!(l.get(2), &big.get(2).sub(&act(kind, &big.part(1), &big.part(1)).unwrap().get(2).scale(&Rational::new(1, 2))));
        }
        assert_eq!(exp(Bracket::Ari, &Mould::zero(3)).unwrap(), Mould::unit(3));
    }

    #[test]
    fn adjoint_of_unit_is_identity() {
        let f = Mould::concentrated(1, rf("x1^2"), 3);
        assert_eq!(adjoint(Bracket::Ari, &Mould::unit(3), &f).unwrap(), f);
        let g = Mould::concentrated(1, rf("1/x1"), 3);
        assert_eq!(ad_pow(Bracket::Ihara, &g, &f, 1).unwrap(), ihara_bracket(&f, &g).unwrap());
    }

    #[test]
    fn non_lie_input_is_rejected() {
        let u = Mould::unit(2);
        assert!(preari(&u, &u).is_err());
        assert!(log(Bracket::Ari, &Mould::zero(2)).is_err());
    }
}
