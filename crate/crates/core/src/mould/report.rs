use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Outcome of one checked instance: depth `r`, split `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub r: usize,
    pub i: usize,
    pub ok: bool,
    /// Canonical text of the nonzero residual, for failures.
    pub witness: Option<String>,
}

impl Instance {
    pub fn pass(r: usize, i: usize) -> Self {
        Instance { r, i, ok: true, witness: None }
    }

    pub fn fail(r: usize, i: usize, witness: String) -> Self {
        Instance { r, i, ok: false, witness: Some(witness) }
    }

    pub fn from_check(r: usize, i: usize, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(r, i)
        } else {
            Self::fail(r, i, witness())
        }
    }
}

/// Pass/fail evidence for a law, one entry per `(r, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub law: String,
    pub instances: Vec<Instance>,
    /// Free-form findings (conventions selected, values observed).
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(law: &str) -> Self {
        VerificationReport { law: String::from(law), instances: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.instances.iter().all(|x| x.ok)
    }

    pub fn push(&mut self, instance: Instance) {
        self.instances.push(instance);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|x| !x.ok)
    }

    /// Appends another report's instances and notes.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.instances.extend(other.instances);
        self.notes.extend(other.notes);
    }

    /// Sorted by `(r, i)`, stable for equal keys.
    pub fn sorted(mut self) -> Self {
        self.instances.sort_by_key(|x| (x.r, x.i));
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.law, if self.passed() { "pass" } else { "FAIL" })?;
        for x in &self.instances {
            write!(f, "  r={} i={} {}", x.r, x.i, if x.ok { "ok" } else { "fail" })?;
            if let Some(w) = &x.witness {
                write!(f, "  residual {w}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
