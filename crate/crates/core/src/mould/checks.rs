//! Membership checks for dm, ls, V and weight homogeneity.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Instance, Mould, VerificationReport};
use crate::kernel::{Polynomial, RationalFunction};
use crate::words::{shuffle, stuffle, Word};

/// Runs independent jobs `0..n`; the std crate plugs in a thread pool.
pub trait Executor: Sync {
    fn run<T, F>(&self, n: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs jobs in order on the calling thread.
pub struct Sequential;

impl Executor for Sequential {
    fn run<T, F>(&self, n: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(job).collect()
    }
}

fn residual(value: Result<RationalFunction, crate::Error>) -> Option<String> {
    match value {
        Ok(v) if v.is_zero() => None,
        Ok(v) => Some(format!("{v}")),
        Err(e) => Some(format!("error: {e}")),
    }
}

fn prefix_checks(f: &Mould, report: &mut VerificationReport) {
    report.push(Instance::from_check(0, 0, f.depth0().is_zero(), || format!("{}", f.depth0())));
    if f.max_depth() >= 1 {
        let g = f.get(1);
        let reflected = g
            .substitute(&[Polynomial::var(1).neg()])
            .expect("reflection has no poles");
        let diff = g.sub(&reflected);
        report.push(Instance::from_check(1, 0, diff.is_zero(), || format!("{diff}")));
    }
}

fn splits(d: usize) -> Vec<(usize, usize)> {
    (2..=d).flat_map(|r| (1..r).map(move |i| (r, i))).collect()
}

fn check_double(f: &Mould, law: &str, polar: bool, exec: &impl Executor) -> VerificationReport {
    let mut report = VerificationReport::new(law);
    prefix_checks(f, &mut report);
    let sharp = f.sharp();
    let jobs = splits(f.max_depth());
    let results = exec.run(jobs.len(), |k| {
        let (r, i) = jobs[k];
        let u = Word::range(1, i);
        let v = Word::range(i + 1, r);
        let sh = shuffle(&u, &v);
        let mut bad = Vec::new();
        if let Some(w) = residual(sharp.evaluate(&sh)) {
            bad.push(format!("sharp-shuffle {w}"));
        }
        let plain = if polar { stuffle(&u, &v) } else { sh };
        if let Some(w) = residual(f.evaluate(&plain)) {
            bad.push(format!("{} {w}", if polar { "stuffle" } else { "shuffle" }));
        }
        if bad.is_empty() {
            Instance::pass(r, i)
        } else {
            Instance::fail(r, i, bad.join("; "))
        }
    });
    report.instances.extend(results);
    report
}

/// Linearized double shuffle equations through the truncation depth.
pub fn check_ls(f: &Mould) -> VerificationReport {
    check_ls_with(f, &Sequential)
}

pub fn check_ls_with(f: &Mould, exec: &impl Executor) -> VerificationReport {
    check_double(f, "ls", false, exec)
}

/// Double shuffle equations modulo products through the truncation depth.
pub fn check_dm(f: &Mould) -> VerificationReport {
    check_dm_with(f, &Sequential)
}

pub fn check_dm_with(f: &Mould, exec: &impl Executor) -> VerificationReport {
    check_double(f, "dm", true, exec)
}

/// `f + φ(f) = 0` in every depth.
pub fn check_in_v(f: &Mould) -> VerificationReport {
    let mut report = VerificationReport::new("V");
    let s = f.add(&f.varphi());
    for r in 1..=f.max_depth() {
        let c = s.get(r);
        report.push(Instance::from_check(r, 0, c.is_zero(), || format!("{c}")));
    }
    report
}

/// `f(x1 ... xr) + (-1)^r f(xr ... x1) = 0` for `2 <= r <= D`.
pub fn lemma_reversal_check(f: &Mould) -> VerificationReport {
    let mut report = VerificationReport::new("reversal");
    let s = f.add(&f.varphi());
    for r in 2..=f.max_depth() {
        let c = s.get(r);
        report.push(Instance::from_check(r, 0, c.is_zero(), || format!("{c}")));
    }
    report
}

/// `g^(r)(x1..xr) = (-1)^(r-1) g^(r)(xr - x_{r-1}, ..., xr - x1, xr)`, the image of V under ♭.
pub fn check_v_flat(g: &Mould) -> VerificationReport {
    let mut report = VerificationReport::new("V-flat");
    for r in 1..=g.max_depth() {
        let c = g.get(r);
        let images: Vec<Polynomial> = (1..=r)
            .map(|k| {
                if k == r {
                    Polynomial::var(r)
                } else {
                    Polynomial::var(r).sub(&Polynomial::var(r - k))
                }
            })
            .collect();
        let moved = c.substitute(&images).expect("linear change of variables");
        let diff = if r % 2 == 1 { c.sub(&moved) } else { c.add(&moved) };
        report.push(Instance::from_check(r, 0, diff.is_zero(), || format!("{diff}")));
    }
    report
}

/// Every nonzero `f^(r)` has total degree `k - r`.
pub fn check_weight(f: &Mould, k: i64) -> VerificationReport {
    let mut report = VerificationReport::new("weight");
    for r in 1..=f.max_depth() {
        let c = f.get(r);
        let ok = c.total_degree().is_none_or(|d| d == k - r as i64);
        report.push(Instance::from_check(r, 0, ok, || {
            format!("degree {} != {}", c.total_degree().unwrap_or(0), k - r as i64)
        }));
    }
    report
}
