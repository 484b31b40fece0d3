//! The named moulds: dupal, pal, φ₀, s_r, ψ₀, ψ̄₀, ψ_B, Q4 and the seeds `x1^k`.

use alloc::vec::Vec;

use crate::kernel::{bernoulli, binomial, factorial, Polynomial, Rational, RationalFunction};
use crate::lie::{exp_with, log_with, Bracket};
use crate::mould::{Executor, Mould};
use crate::Error;

/// Which variable carries the `i`-th summand of the dupal numerator.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DupalReading {
    /// `x_{r-i}`, the literal index.
    Literal,
    /// `x_{i+1}`.
    Mirrored,
}

impl DupalReading {
    pub fn name(self) -> &'static str {
        match self {
            DupalReading::Literal => "x_{r-i}",
            DupalReading::Mirrored => "x_{i+1}",
        }
    }
}

/// The reading selected by calibration.
pub const DUPAL_READING: DupalReading = DupalReading::Mirrored;

fn product_of_vars(r: usize) -> Polynomial {
    (1..=r).fold(Polynomial::one(), |acc, j| acc.mul(&Polynomial::var(j)))
}

fn sum_of_vars(from: usize, to: usize) -> Polynomial {
    (from..=to).fold(Polynomial::zero(), |acc, j| acc.add(&Polynomial::var(j)))
}

fn recip(p: Polynomial) -> RationalFunction {
    RationalFunction::new(Polynomial::one(), p).expect("nonzero denominator")
}

/// `d^(r) = B_r/r! sum_i (-1)^i C(r-1, i) x_* / (x1...xr)`; `d^(0) = 0`.
pub fn dupal_with(r: usize, reading: DupalReading) -> RationalFunction {
    if r == 0 {
        return RationalFunction::zero();
    }
    let b = bernoulli(r);
    if b.is_zero() {
        return RationalFunction::zero();
    }
    let mut num = Polynomial::zero();
    for i in 0..r {
        let c = binomial(r - 1, i);
        let c = if i % 2 == 1 { -c } else { c };
        let v = match reading {
            DupalReading::Literal => r - i,
            DupalReading::Mirrored => i + 1,
        };
        num = num.add(&Polynomial::var(v).scale(&c));
    }
    let scale = &b * &factorial(r).recip();
    RationalFunction::new(num.scale(&scale), product_of_vars(r)).expect("nonzero denominator")
}

pub fn dupal(r: usize) -> RationalFunction {
    dupal_with(r, DUPAL_READING)
}

/// `P^(r) = 1/(x1+...+xr) sum_{i<r} P^(i)(x1..xi) d^(r-i)(x_{i+1}..xr)`, `P^(0) = 1`.
pub fn pal_with(depth: usize, reading: DupalReading) -> Mould {
    let d: Vec<RationalFunction> = (0..=depth).map(|r| dupal_with(r, reading)).collect();
    let mut p = Mould::unit(depth);
    for r in 1..=depth {
        let mut parts = Vec::with_capacity(r);
        for i in 0..r {
            if d[r - i].is_zero() {
                continue;
            }
            let shift: Vec<Polynomial> = (1..=r - i).map(|j| Polynomial::var(i + j)).collect();
            let tail = d[r - i].substitute(&shift).expect("shift has no poles");
            parts.push(p.component(i).mul(&tail));
        }
        p.set(r, RationalFunction::sum(parts.iter()).mul(&recip(sum_of_vars(1, r))));
    }
    p.with_weight(Some(0))
}

pub fn pal(depth: usize) -> Mould {
    pal_with(depth, DUPAL_READING)
}

/// `φ₀ = log_ari(pal)`, without the calibration gate.
pub fn phi0_unchecked<E: Executor>(depth: usize, exec: &E) -> Result<Mould, Error> {
    log_with(Bracket::Ari, &pal(depth), exec)
}

/// `s_r = sum_{i<r} (r-i) prod_{j != i, 0<=j<=r} 1/(x_j - x_i)` with `x0 = 0`.
pub fn s_r(r: usize) -> RationalFunction {
    let x = |j: usize| if j == 0 { Polynomial::zero() } else { Polynomial::var(j) };
    let mut parts = Vec::with_capacity(r);
    for i in 0..r {
        let mut den = Polynomial::one();
        for j in (0..=r).filter(|&j| j != i) {
            den = den.mul(&x(j).sub(&x(i)));
        }
        parts.push(recip(den).scale(&Rational::from_integer((r - i) as i64)));
    }
    RationalFunction::sum(parts.iter())
}

/// `ψ₀^(r) = s_r / C(r+1, 2)`.
pub fn psi0(r: usize) -> RationalFunction {
    s_r(r).scale(&binomial(r + 1, 2).recip())
}

/// `ψ̄₀^(r) = -ψ₀^(r) / 2^r`.
pub fn psi0_bar(r: usize) -> RationalFunction {
    psi0(r).scale(&-Rational::new(1, 1 << r))
}

const PSI_B: [(i64, i64); 5] = [(-1, 2), (-1, 4), (-1, 8), (-1, 18), (-11, 576)];

/// `ψ_B^(r)` for `1 <= r <= 5`.
pub fn psi_b(r: usize) -> Result<RationalFunction, Error> {
    match r {
        1..=5 => {
            let (p, q) = PSI_B[r - 1];
            Ok(psi0(r).scale(&Rational::new(p, q)))
        }
        _ => Err(Error::PsiBOutOfRange(r)),
    }
}

fn mould_of(depth: usize, weight: i64, f: impl Fn(usize) -> RationalFunction) -> Mould {
    let mut m = Mould::zero(depth);
    for r in 1..=depth {
        m.set(r, f(r));
    }
    m.with_weight(Some(weight))
}

pub fn s_mould(r: usize, depth: usize) -> Mould {
    Mould::concentrated(r, s_r(r), depth).with_weight(Some(0))
}

pub fn psi0_mould(depth: usize) -> Mould {
    mould_of(depth, 0, psi0)
}

pub fn psi0_bar_mould(depth: usize) -> Mould {
    mould_of(depth, 0, psi0_bar)
}

/// `ψ_B` through `min(depth, 5)`; deeper components are left zero.
pub fn psi_b_mould(depth: usize) -> Mould {
    mould_of(depth, 0, |r| psi_b(r).unwrap_or_default())
}

/// `B = exp_∘(ψ_B)`.
pub fn big_b<E: Executor>(depth: usize, exec: &E) -> Mould {
    exp_with(Bracket::Ihara, &psi_b_mould(depth), exec).expect("ψ_B lies in L")
}

/// The cyclic sum over `i ∈ Z/5` with `x0 = 0`.
pub fn q4_component() -> RationalFunction {
    let x = |j: usize| if j.is_multiple_of(5) { Polynomial::zero() } else { Polynomial::var(j % 5) };
    let mut parts = Vec::with_capacity(5);
    for i in 0..5 {
        let den = x(i + 1)
            .sub(&x(i))
            .mul(&x(i + 3).sub(&x(i)))
            .mul(&x(i + 3).sub(&x(i + 2)))
            .mul(&x(i + 4).sub(&x(i)));
        parts.push(recip(den));
    }
    RationalFunction::sum(parts.iter())
}

pub fn q4(depth: usize) -> Mould {
    Mould::concentrated(4, q4_component(), depth).with_weight(Some(0))
}

/// `x1^k` in depth 1, weight `-(k+1)`.
pub fn seed(k: i32, depth: usize) -> Mould {
    let f = RationalFunction::var(1).pow(k).expect("x1 is nonzero");
    Mould::concentrated(1, f, depth).with_weight(Some(-(k as i64 + 1)))
}

/// `σ3` truncated after depth 2.
pub fn sigma3_truncated(depth: usize) -> Mould {
    let mut m = Mould::zero(depth);
    if depth >= 1 {
        m.set(1, RationalFunction::var(1).pow(2).expect("polynomial"));
    }
    if depth >= 2 {
        m.set(2, RationalFunction::from_poly(Polynomial::linear_in(&[1, 2], &[-2, 1])));
    }
    m.with_weight(Some(-3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse::parse_ratfun;
    use crate::mould::{check_ls, Sequential};

    fn rf(s: &str) -> RationalFunction {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn dupal_values() {
        assert_eq!(dupal(0), RationalFunction::zero());
        assert_eq!(dupal(1), rf("-1/2"));
        assert_eq!(dupal(3), RationalFunction::zero());
        assert_eq!(dupal(5), RationalFunction::zero());
        assert_eq!(dupal_with(2, DupalReading::Mirrored), rf("(x1 - x2)/(12*x1*x2)"));
        assert_eq!(dupal_with(2, DupalReading::Literal), rf("(x2 - x1)/(12*x1*x2)"));
    }

    #[test]
    fn pal_low_depths() {
        let p = pal(2);
        assert!(p.is_group());
        assert_eq!(p.weight(), Some(0));
        assert_eq!(p.get(1), &rf("-1/(2*x1)"));
        // (P1(x1) d1 + d2(x1, x2)) / (x1 + x2)
        let expected = rf("(-1/(2*x1)*(-1/2) + (x1 - x2)/(12*x1*x2))/(x1 + x2)");
        assert_eq!(p.get(2), &expected);
    }

    #[test]
    fn phi0_matches_reference_values() {
        let phi = phi0_unchecked(3, &Sequential).unwrap();
        assert_eq!(phi.get(1), &rf("-1/(2*x1)"));
        assert_eq!(phi.get(2), &rf("(x1 - x2)/(12*x1*x2*(x1 + x2))"));
        assert_eq!(
            phi.get(3),
            &rf("(-x2*x1^2 + x3*x1^2 - x2^2*x1 + x3^2*x1 + 2*x2*x3*x1 - x2*x3^2 - x2^2*x3)/(48*x1*x2*x3*(x1 + x2)*(x2 + x3)*(x1 + x2 + x3))")
        );
    }

    #[test]
    fn psi0_matches_reference_values() {
        assert_eq!(psi0(1), rf("1/x1"));
        assert_eq!(psi0(2), rf("(2*x1 - x2)/(3*x1*(x1 - x2)*x2)"));
        assert_eq!(
            psi0(3),
            rf("(3*x2*x1^2 - 2*x3*x1^2 - 3*x2^2*x1 + 2*x3^2*x1 - x2*x3^2 + x2^2*x3)/(6*x1*x2*x3*(x1 - x2)*(x1 - x3)*(x2 - x3))")
        );
        assert_eq!(s_r(1), rf("1/x1"));
    }

    #[test]
    fn psi_b_scalings() {
        assert_eq!(psi_b(1).unwrap(), psi0(1).scale(&Rational::new(-1, 2)));
        assert_eq!(psi_b(4).unwrap(), psi0(4).scale(&Rational::new(-1, 18)));
        assert_eq!(psi_b(5).unwrap(), psi0(5).scale(&Rational::new(-11, 576)));
        assert_eq!(psi_b(6), Err(Error::PsiBOutOfRange(6)));
        assert_eq!(psi_b(0), Err(Error::PsiBOutOfRange(0)));
        assert_eq!(psi0_bar(3), psi0(3).scale(&Rational::new(-1, 8)));
    }

    #[test]
    fn q4_is_a_linearized_solution() {
        let q = q4(4);
        assert!(check_ls(&q).passed());
        assert!(q.add(&q.varphi()).is_zero());
        assert_eq!(q.get(4).total_degree(), Some(-4));
        assert!(q.get(3).is_zero());
    }

    #[test]
    fn seeds_and_weights() {
        let s = seed(-2, 3);
        assert_eq!(s.get(1), &rf("x1^-2"));
        assert_eq!(s.weight(), Some(1));
        assert_eq!(seed(2, 1).weight(), Some(-3));
        assert_eq!(sigma3_truncated(3).get(2).to_string(), "-2*x1 + x2");
    }
}
