//! Seeded Schwartz-Zippel cross-checks run beside canonical equality.
//!
//! Each identity is re-evaluated term by term at random integer points, so no
//! cancellation goes through the canonical form. An instance passes when the
//! numeric verdict agrees with the canonical one.

use moulde_core::words::{shuffle, stuffle, Word, WordSum};
use moulde_core::{Error, Instance, Mould, Rational, VerificationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const POINTS: usize = 3;
const RANGE: i64 = 1 << 40;

pub struct CrossCheck {
    rng: ChaCha8Rng,
}

impl CrossCheck {
    pub fn new(seed: u64) -> Self {
        CrossCheck { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn point(&mut self) -> Vec<Rational> {
        (0..moulde_core::MAX_VARS).map(|_| Rational::from_integer(self.rng.gen_range(-RANGE..=RANGE))).collect()
    }

    /// Draws points until `value` has no pole there.
    fn sample<T>(&mut self, mut value: impl FnMut(&[Rational]) -> Result<T, Error>) -> Result<T, Error> {
        for _ in 0..64 {
            let p = self.point();
            match value(&p) {
                Err(Error::PoleAtPoint | Error::DivisionByZero) => continue,
                other => return other,
            }
        }
        Err(Error::PoleAtPoint)
    }

    fn vanishes(&mut self, value: impl Fn(&[Rational]) -> Result<Rational, Error>) -> Result<bool, Error> {
        for _ in 0..POINTS {
            if !self.sample(&value)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The dm or ls equations of `f`, instance by instance.
    pub fn equations(&mut self, f: &Mould, polar: bool) -> VerificationReport {
        let law = if polar { "dm" } else { "ls" };
        let mut report = VerificationReport::new(&format!("paranoid-{law}"));
        let sharp = f.sharp();
        for r in 2..=f.max_depth() {
            for i in 1..r {
                let u = Word::range(1, i);
                let v = Word::range(i + 1, r);
                let sh = shuffle(&u, &v);
                let plain = if polar { stuffle(&u, &v) } else { sh.clone() };
                let checks = [(&sharp, &sh), (f, &plain)];
                let mut witness = Vec::new();
                for (k, (m, s)) in checks.into_iter().enumerate() {
                    let canonical = m.evaluate(s).map(|x| x.is_zero());
                    let numeric = self.vanishes(|p| evaluate_terms(m, s, p));
                    match (canonical, numeric) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (a, b) => witness.push(format!("equation {k}: canonical {a:?}, numeric {b:?}")),
                    }
                }
                report.push(if witness.is_empty() { Instance::pass(r, i) } else { Instance::fail(r, i, witness.join("; ")) });
            }
        }
        report
    }

    /// Componentwise equality of `a` and `b` in depths `from..=to`.
    pub fn equal(&mut self, law: &str, a: &Mould, b: &Mould, from: usize, to: usize) -> VerificationReport {
        let mut report = VerificationReport::new(&format!("paranoid-{law}"));
        for r in from..=to {
            let (x, y) = (a.component(r), b.component(r));
            let canonical = x == y;
            let numeric = self.vanishes(|p| Ok(&x.evaluate(p)? - &y.evaluate(p)?));
            report.push(match numeric {
                Ok(n) if n == canonical => Instance::pass(r, 0),
                other => Instance::fail(r, 0, format!("canonical {canonical}, numeric {other:?}")),
            });
        }
        report
    }
}

/// `f(s)` at a point, summed term by term.
pub fn evaluate_terms(f: &Mould, s: &WordSum, point: &[Rational]) -> Result<Rational, Error> {
    let mut total = Rational::zero();
    for (w, c) in s.terms() {
        let value = if w.is_empty() {
            f.depth0().clone()
        } else {
            let args: Vec<Rational> = w.images().iter().map(|q| q.eval(point)).collect();
            f.get(w.len()).evaluate(&args)?
        };
        total += &(&c.evaluate(point)? * &value);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use moulde_core::mould::{check_dm, Sequential};
    use moulde_core::solutions::{psi0_mould, sigma3_truncated, Workbench};

    #[test]
    fn agrees_with_canonical_verdicts() {
        let mut cc = CrossCheck::new(7);
        let eta = Workbench::new(4, &Sequential).eta(3).unwrap();
        assert!(cc.equations(&eta, true).passed());
        let sigma = sigma3_truncated(3);
        assert!(!check_dm(&sigma).passed());
        assert!(cc.equations(&sigma, true).passed());
        assert!(cc.equations(&psi0_mould(4), true).passed());
        assert!(cc.equal("x", &eta, &eta.scale(&Rational::new(1, 2)), 1, 3).passed());
    }
}
