use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Outcome of an exhaustive check. Violations are data, not errors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub checked: usize,
    pub violations: Vec<String>,
    pub counts: BTreeMap<String, usize>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    /// Records `ok` as one check, with `msg` computed only on failure.
    pub fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.tick();
        if !ok {
            self.fail(msg());
        }
    }

    pub fn count(&mut self, key: impl Into<String>, n: usize) {
        self.counts.insert(key.into(), n);
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.counts.extend(other.counts);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "fail" };
        write!(f, "{}: {status} ({} checked", self.check, self.checked)?;
        if !self.passed() {
            write!(f, ", {} violations; first: {}", self.violations.len(), self.violations[0])?;
        }
        write!(f, ")")
    }
}
