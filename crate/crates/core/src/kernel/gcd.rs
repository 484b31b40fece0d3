//! Multivariate GCD over the rationals by recursive content splitting and
//! primitive pseudo-remainder sequences.
//!
//! This is the slow, general path. Rational functions whose denominators
//! factor into linear forms never reach it.

use alloc::vec::Vec;

use super::monomial::MAX_VARS;
use super::poly::Polynomial;
use super::rational::{mulmod, powmod};

const PRIME: u64 = (1u64 << 61) - 1;

const POINT: [u64; MAX_VARS] = [
    0x0d41_72c9_3be8_5a07,
    0x16a3_e05f_9c2d_7b41,
    0x02b8_4d7e_61f9_c3a5,
    0x1f07_93c6_a85e_2d19,
    0x09e5_2b71_d4c0_8f63,
    0x1258_f6a0_3d97_e1cb,
    0x07cd_19e4_b26a_5f83,
    0x1b6f_a358_0e1d_94c7,
];

type Univariate = Vec<Polynomial>;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic().0;
    }
    if b.is_zero() {
        return a.monic().0;
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a == b {
        return a.monic().0;
    }
    let v = a.max_var().max(b.max_var());
    let ua = a.coefficients_in(v);
    let ub = b.coefficients_in(v);
    if ua.len() == 1 {
        return gcd(a, &content(&ub));
    }
    if ub.len() == 1 {
        return gcd(&content(&ua), b);
    }
    let ca = content(&ua);
    let cb = content(&ub);
    let g_content = gcd(&ca, &cb);
    if coprime_image(&ua, &ub) {
        return g_content.monic().0;
    }
    let mut p = divide_coefficients(&ua, &ca);
    let mut q = divide_coefficients(&ub, &cb);
    if q.len() > p.len() {
        core::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = pseudo_remainder(&p, &q);
        p = q;
        q = primitive_part(&r);
    }
    let g = Polynomial::from_coefficients_in(v, &primitive_part(&p));
    g.mul(&g_content).monic().0
}

/// Images of the coefficients at the fixed point, or `None` if the leading one vanishes.
fn image(u: &Univariate) -> Option<Vec<u64>> {
    let out: Vec<u64> = u.iter().map(|c| c.eval_mod(PRIME, &POINT)).collect::<Option<_>>()?;
    (*out.last()? != 0).then_some(out)
}

fn inverse(a: u64) -> u64 {
    powmod(a, PRIME - 2, PRIME)
}

/// Remainder of `a` by `b` mod the prime; `b` has a nonzero leading entry.
fn rem_mod(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let n = b.len() - 1;
    let inv = inverse(b[n]);
    while a.len() > n {
        let d = a.len() - 1;
        let q = mulmod(a[d], inv, PRIME);
        if q != 0 {
            for k in 0..=n {
                let t = mulmod(q, b[k], PRIME);
                a[k + d - n] = (a[k + d - n] + PRIME - t) % PRIME;
            }
        }
        a.pop();
        while matches!(a.last(), Some(0)) {
            a.pop();
        }
    }
    a
}

/// Does the modular image certify that the GCD is free of the main variable?
/// With both leading coefficients nonzero at the point, the true GCD's degree is
/// at most the image GCD's, so a constant image GCD is a proof.
fn coprime_image(ua: &Univariate, ub: &Univariate) -> bool {
    let (Some(mut p), Some(mut q)) = (image(ua), image(ub)) else {
        return false;
    };
    if q.len() > p.len() {
        core::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        if q.len() == 1 {
            return true;
        }
        let r = rem_mod(p, &q);
        p = q;
        q = r;
    }
    p.len() == 1
}

fn content(u: &Univariate) -> Polynomial {
    let mut g = Polynomial::zero();
    for c in u {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_coefficients(u: &Univariate, by: &Polynomial) -> Univariate {
    if by.is_one() {
        return u.clone();
    }
    u.iter()
        .map(|c| c.div_exact(by).expect("content divides every coefficient"))
        .collect()
}

fn primitive_part(u: &Univariate) -> Univariate {
    if u.is_empty() {
        return Vec::new();
    }
    let c = content(u);
    let mut out = divide_coefficients(u, &c);
    // fix the unit: leading coefficient of the top coefficient becomes 1
    let lc = out.last().unwrap().leading_coeff();
    if !lc.is_one() {
        let inv = lc.recip();
        out = out.iter().map(|p| p.scale(&inv)).collect();
    }
    out
}

fn trim(u: &mut Univariate) {
    while matches!(u.last(), Some(c) if c.is_zero()) {
        u.pop();
    }
}

fn pseudo_remainder(a: &Univariate, b: &Univariate) -> Univariate {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r = a.clone();
    trim(&mut r);
    while !r.is_empty() && r.len() > n {
        let d = r.len() - 1;
        let lr = r[d].clone();
        let shift = d - n;
        let mut next: Univariate = r.iter().map(|c| c.mul(lb)).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bc.mul(&lr));
        }
        debug_assert!(next[d].is_zero());
        r = next;
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::Rational;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(Rational::from(n))
    }

    #[test]
    fn common_factor_is_recovered() {
        let g = x(1).mul(&x(2)).add(&x(3)).add(&c(1));
        let a = g.mul(&x(1).sub(&x(2)));
        let b = g.mul(&x(1).mul(&x(1)).add(&x(3)));
        assert_eq!(gcd(&a, &b), g.monic().0);
    }

    #[test]
    fn coprime_inputs_give_one() {
        let a = x(1).mul(&x(1)).add(&x(2).mul(&x(2))).add(&c(1));
        let b = x(1).sub(&x(2));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn content_only_gcd() {
        let a = x(1).mul(&x(2)).scale(&Rational::from(6));
        let b = x(1).mul(&x(3)).scale(&Rational::from(4));
        assert_eq!(gcd(&a, &b), x(1));
        assert_eq!(gcd(&Polynomial::zero(), &b), x(1).mul(&x(3)));
    }

    #[test]
    fn repeated_factors() {
        let l = x(2).sub(&x(1));
        let a = l.pow(3).mul(&x(1));
        let b = l.pow(2).mul(&x(2));
        assert_eq!(gcd(&a, &b), l.pow(2).monic().0);
    }
}
