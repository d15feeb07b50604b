//! Pass/fail records produced by the checking routines.

use serde::Serialize;

/// Outcome of one check over some finite range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checked: usize,
    pub failures: usize,
    /// First failing instance, if any.
    pub witness: Option<String>,
    pub detail: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, checked: 0, failures: 0, witness: None, detail: String::new() }
    }

    /// Records one comparison; the first failure becomes the witness.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.passed {
                self.witness = Some(witness());
            }
            self.passed = false;
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    /// Folds another report's counts and first witness into this one.
    pub fn absorb(&mut self, other: &CheckReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        if !other.passed && self.passed {
            self.passed = false;
            self.witness = other.witness.clone().map(|w| format!("{}: {w}", other.name));
        }
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} ({} checked", self.status(), self.name, self.checked)?;
        if self.failures > 0 {
            write!(f, ", {} failed", self.failures)?;
        }
        write!(f, ")")?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        if !self.detail.is_empty() {
            write!(f, " [{}]", self.detail)?;
        }
        Ok(())
    }
}
