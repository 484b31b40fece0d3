//! Canonical polar solutions, the two lifts and the identities relating them.

mod expr;
mod lifts;
mod named;
mod verify;

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use core::cell::{OnceCell, RefCell};

use crate::kernel::parse::parse_ratfun;
use crate::lie::Bracket;
use crate::mould::{check_ls_with, Executor, Mould};
use crate::Error;

pub use expr::BracketExpr;
pub use lifts::{chi_b, chi_b_inv, chi_e};
pub use named::{
    big_b, dupal, dupal_with, pal, pal_with, phi0_unchecked, psi0, psi0_bar, psi0_bar_mould, psi0_mould, psi_b,
    psi_b_mould, q4, q4_component, s_mould, s_r, seed, sigma3_truncated, DupalReading, DUPAL_READING,
};
pub use verify::{
    calibrate, compare_lifts, decompose_sigma, evaluate_decomposition, pal_symmetral, phi0_extra_check, phi0_shuffle, prop54_check, s_identity_check, sigma_terms,
    witt_check, xi_relation, LiftComparison, PHI0_REFERENCE,
};

/// Named moulds at one truncation depth, built on demand and kept.
pub struct Workbench<'e, E: Executor> {
    depth: usize,
    exec: &'e E,
    pal: OnceCell<Mould>,
    phi0: OnceCell<Mould>,
    phi0_flat: OnceCell<Mould>,
    etas: RefCell<BTreeMap<i32, Mould>>,
    xis: RefCell<BTreeMap<i32, Mould>>,
}

impl<'e, E: Executor> Workbench<'e, E> {
    pub fn new(depth: usize, exec: &'e E) -> Self {
        Workbench {
            depth,
            exec,
            pal: OnceCell::new(),
            phi0: OnceCell::new(),
            phi0_flat: OnceCell::new(),
            etas: RefCell::new(BTreeMap::new()),
            xis: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn exec(&self) -> &'e E {
        self.exec
    }

    pub fn pal(&self) -> &Mould {
        self.pal.get_or_init(|| pal(self.depth))
    }

    /// `φ₀ = log_ari(pal)`; fails if depths 1..3 differ from the known values.
    pub fn phi0(&self) -> Result<&Mould, Error> {
        if let Some(m) = self.phi0.get() {
            return Ok(m);
        }
        let m = crate::lie::log_with(Bracket::Ari, self.pal(), self.exec)?;
        for (r, text) in PHI0_REFERENCE.iter().enumerate().take(self.depth) {
            let expected = parse_ratfun(text).expect("valid constant");
            if m.get(r + 1) != &expected {
                return Err(Error::Calibration(alloc::format!("phi0 depth {} is {}", r + 1, m.get(r + 1))));
            }
        }
        Ok(self.phi0.get_or_init(|| m))
    }

    pub fn phi0_flat(&self) -> Result<&Mould, Error> {
        if let Some(m) = self.phi0_flat.get() {
            return Ok(m);
        }
        let m = self.phi0()?.flat();
        Ok(self.phi0_flat.get_or_init(|| m))
    }

    fn require_ls(&self, f: &Mould) -> Result<(), Error> {
        let report = check_ls_with(f, self.exec);
        let failure = report.failures().next().map(|x| {
            alloc::format!("input is not in ls at r={} i={}: {}", x.r, x.i, x.witness.clone().unwrap_or_default())
        });
        match failure {
            None => Ok(()),
            Some(text) => Err(Error::LawViolation(text)),
        }
    }

    pub fn chi_e(&self, f: &Mould) -> Result<Mould, Error> {
        self.require_ls(f)?;
        chi_e(&f.truncate(self.depth), self.phi0_flat()?, self.exec)
    }

    pub fn chi_b(&self, f: &Mould) -> Result<Mould, Error> {
        self.require_ls(f)?;
        chi_b(&f.truncate(self.depth), self.exec)
    }

    pub fn chi_b_inv(&self, f: &Mould) -> Result<Mould, Error> {
        chi_b_inv(&f.truncate(self.depth), self.exec)
    }

    /// `η_k = χ_E(x1^{k-1})` for odd `k`.
    pub fn eta(&self, k: i32) -> Result<Mould, Error> {
        if let Some(m) = self.etas.borrow().get(&k) {
            return Ok(m.clone());
        }
        let m = self.chi_e(&odd_seed(k, self.depth)?)?;
        self.etas.borrow_mut().insert(k, m.clone());
        Ok(m)
    }

    /// `ξ_k = χ_B(x1^{k-1})` for odd `k`.
    pub fn xi(&self, k: i32) -> Result<Mould, Error> {
        if let Some(m) = self.xis.borrow().get(&k) {
            return Ok(m.clone());
        }
        let m = self.chi_b(&odd_seed(k, self.depth)?)?;
        self.xis.borrow_mut().insert(k, m.clone());
        Ok(m)
    }

    /// Resolves a registry name at the workbench depth.
    pub fn named(&self, name: &str) -> Result<Mould, Error> {
        let d = self.depth;
        let unknown = || Error::UnknownName(name.to_string());
        let index = |prefix: &str| -> Option<Result<i32, Error>> {
            name.strip_prefix(prefix).map(|rest| rest.parse::<i32>().map_err(|_| unknown()))
        };
        if let Some(k) = index("eta:") {
            return self.eta(k?);
        }
        if let Some(k) = index("xi:") {
            return self.xi(k?);
        }
        if let Some(k) = index("seed:") {
            return Ok(seed(k?, d));
        }
        if let Some(r) = index("s:") {
            let r = r?;
            if r < 1 {
                return Err(unknown());
            }
            return Ok(s_mould(r as usize, d));
        }
        Ok(match name {
            "zero" => Mould::zero(d),
            "unit" => Mould::unit(d),
            "pal" => self.pal().clone(),
            "pal-flat" => self.pal().flat(),
            "phi0" => self.phi0()?.clone(),
            "phi0-flat" => self.phi0_flat()?.clone(),
            "psi0" => psi0_mould(d),
            "psi0bar" => psi0_bar_mould(d),
            "psiB" => psi_b_mould(d),
            "B" => big_b(d, self.exec),
            "Q4" => q4(d),
            "sigma3-truncated" => sigma3_truncated(d),
            _ => return Err(unknown()),
        })
    }

    pub fn evaluate(&self, e: &BracketExpr, kind: Bracket) -> Result<Mould, Error> {
        e.evaluate(kind, &mut |n| self.named(n), self.exec)
    }
}

fn odd_seed(k: i32, depth: usize) -> Result<Mould, Error> {
    if k % 2 == 0 {
        return Err(Error::UnknownName(alloc::format!("index {k} is even")));
    }
    Ok(seed(k - 1, depth))
}
