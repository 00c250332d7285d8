use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub kind: String,
    pub instances_run: usize,
    pub mismatches: Vec<Mismatch>,
    pub structural_failures: Vec<String>,
    pub budget_exhaustions: Vec<String>,
}

impl VerifyReport {
    pub fn new(kind: impl Into<String>) -> Self {
        VerifyReport { kind: kind.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.structural_failures.is_empty()
    }

    pub fn mismatch(&mut self, input: impl Into<String>, expected: impl fmt::Display, got: impl fmt::Display) {
        self.mismatches.push(Mismatch { input: input.into(), expected: expected.to_string(), got: got.to_string() });
    }

    pub fn fail(&mut self, what: impl Into<String>) {
        self.structural_failures.push(what.into());
    }

    /// Records a failure unless `ok`.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fail(what());
        }
    }

    pub fn absorb(&mut self, other: VerifyReport) {
        self.instances_run += other.instances_run;
        self.mismatches.extend(other.mismatches);
        self.structural_failures.extend(other.structural_failures);
        self.budget_exhaustions.extend(other.budget_exhaustions);
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<24} {:>7} run {:>4} mismatches {:>4} structural {:>4} exhausted  {}",
            self.kind,
            self.instances_run,
            self.mismatches.len(),
            self.structural_failures.len(),
            self.budget_exhaustions.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}
