//! Suite reports with matching JSON and human renderings.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        SuiteReport { suite: suite.into(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn counts(&self) -> (usize, usize) {
        let p = self.checks.iter().filter(|c| c.passed).count();
        (p, self.checks.len() - p)
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>, millis: u128) {
        self.checks.push(CheckRecord { name: name.into(), passed, witness, millis });
    }

    /// Runs `f`, timing it. `Ok(None)` passes, `Ok(Some(w))` fails with witness
    /// `w`, and `Err` fails with the error text.
    pub fn run<E: fmt::Display>(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<Option<String>, E>) {
        let t = Instant::now();
        let r = f();
        let millis = t.elapsed().as_millis();
        match r {
            Ok(None) => self.push(name, true, None, millis),
            Ok(Some(w)) => self.push(name, false, Some(w), millis),
            Err(e) => self.push(name, false, Some(e.to_string()), millis),
        }
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.suite, c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.counts();
        writeln!(f, "suite {}: {} passed, {} failed", self.suite, p, q)?;
        for c in &self.checks {
            write!(f, "  [{}] {} ({} ms)", if c.passed { "pass" } else { "FAIL" }, c.name, c.millis)?;
            if let Some(w) = &c.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

/// `None` when `cond` holds, otherwise the lazily built witness.
pub fn expect(cond: bool, witness: impl FnOnce() -> String) -> Option<String> {
    if cond {
        None
    } else {
        Some(witness())
    }
}
