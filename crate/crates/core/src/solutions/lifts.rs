//! Ecalle's and Brown's lifts from linearized solutions to double shuffle solutions.

use alloc::vec::Vec;

use crate::kernel::{Rational, RationalFunction};
use crate::lie::{ad_series_with, bracket_component, Bracket};
use crate::mould::{Executor, Mould};
use crate::Error;

use super::named::psi0;

/// `χ_E(f) = sum_n ad^n(φ₀♭)(f) / n!` for the Ihara bracket.
pub fn chi_e<E: Executor>(f: &Mould, phi0_flat: &Mould, exec: &E) -> Result<Mould, Error> {
    ad_series_with(Bracket::Ihara, phi0_flat, f, true, exec)
}

/// `χ_B` of a single component `f` of depth `d`, as a list indexed by depth `0..=max_depth`.
fn chi_b_part<E: Executor>(f: &RationalFunction, d: usize, psi: &[RationalFunction], max_depth: usize, exec: &E) -> Vec<RationalFunction> {
    let mut out = alloc::vec![RationalFunction::zero(); max_depth + 1];
    if f.is_zero() || d > max_depth {
        return out;
    }
    out[d] = f.clone();
    for r in 1..=max_depth - d {
        let prev = &out;
        let parts = exec.run(r, |k| {
            let i = k + 1;
            bracket_component(Bracket::Ihara, &psi[i], i, &prev[d + r - i], d + r - i)
        });
        let c = Rational::new(1, 2 * r as i64);
        out[d + r] = RationalFunction::sum(parts.iter()).scale(&c);
    }
    out
}

fn psi_table(depth: usize) -> Vec<RationalFunction> {
    (0..=depth).map(|r| if r == 0 { RationalFunction::zero() } else { psi0(r) }).collect()
}

/// `χ_B(f)`, extended linearly over the depth components of `f`.
pub fn chi_b<E: Executor>(f: &Mould, exec: &E) -> Result<Mould, Error> {
    if !f.is_lie() {
        return Err(Error::WrongDepthZero { expected: "0".into(), found: alloc::format!("{}", f.depth0()) });
    }
    let depth = f.max_depth();
    let psi = psi_table(depth);
    let mut acc: Vec<Vec<RationalFunction>> = alloc::vec![Vec::new(); depth + 1];
    for d in 1..=depth {
        for (k, c) in chi_b_part(f.get(d), d, &psi, depth, exec).into_iter().enumerate() {
            acc[k].push(c);
        }
    }
    let comps = (1..=depth).map(|k| RationalFunction::sum(acc[k].iter())).collect();
    Ok(Mould::from_components(Rational::zero(), comps)?.with_weight(f.weight()))
}

/// The inverse of [`chi_b`], solved depth by depth from the lowest nonzero depth.
pub fn chi_b_inv<E: Executor>(big: &Mould, exec: &E) -> Result<Mould, Error> {
    if !big.is_lie() {
        return Err(Error::WrongDepthZero { expected: "0".into(), found: alloc::format!("{}", big.depth0()) });
    }
    let depth = big.max_depth();
    let psi = psi_table(depth);
    let mut image = alloc::vec![RationalFunction::zero(); depth + 1];
    let mut g = Mould::zero(depth);
    for e in 1..=depth {
        let v = big.get(e).sub(&image[e]);
        for (k, c) in chi_b_part(&v, e, &psi, depth, exec).into_iter().enumerate() {
            if !c.is_zero() {
                image[k] = image[k].add(&c);
            }
        }
        g.set(e, v);
    }
    Ok(g.with_weight(big.weight()))
}
