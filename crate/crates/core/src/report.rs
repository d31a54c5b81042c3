use serde::Serialize;

/// Outcome of an exhaustive or fuzzed law check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub law: String,
    pub cases: usize,
    pub passed: bool,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Report {
    pub fn new(law: impl Into<String>) -> Self {
        Report { law: law.into(), cases: 0, passed: true, failures: 0, counterexample: None }
    }

    /// Counts one case; the first failing case is kept as the counterexample.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(witness());
        }
    }

    /// Folds another report into this one.
    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        self.failures += other.failures;
        if !other.passed && self.passed {
            self.passed = false;
            self.counterexample = other.counterexample.map(|c| format!("{}: {c}", other.law));
        }
    }
}
