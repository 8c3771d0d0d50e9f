//! Machine-readable check reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub witness: String,
    pub detail: String,
}

/// Outcome of one named family of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub total: u64,
    pub failures: Vec<Failure>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            total: 0,
            failures: Vec::new(),
        }
    }

    /// Counts one instance; the witness is only built on failure.
    pub fn record<F>(&mut self, ok: bool, witness: F)
    where
        F: FnOnce() -> (String, String),
    {
        self.total += 1;
        if !ok {
            let (witness, detail) = witness();
            self.failures.push(Failure { witness, detail });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Value, seed: Option<u64>) -> Self {
        Report {
            command: command.into(),
            params,
            seed,
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.passed();
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check: `PASS name (total)` or `FAIL name (k/total)`.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.passed() {
                out.push_str(&format!("PASS {} ({} checked)\n", c.name, c.total));
            } else {
                out.push_str(&format!(
                    "FAIL {} ({}/{} failed)\n",
                    c.name,
                    c.failures.len(),
                    c.total
                ));
                for f in c.failures.iter().take(5) {
                    out.push_str(&format!("  {}: {}\n", f.witness, f.detail));
                }
            }
        }
        out
    }
}
