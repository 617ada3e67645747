use serde::Serialize;

/// Outcome of one named law or property check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The mathematical statement the check reproduces.
    pub anchor: String,
    pub passed: bool,
    /// Counterexample on failure, or an informative witness on success.
    pub witness: Option<String>,
    /// Largest numerical residual, for floating-point checks.
    pub error: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check that fails iff `counterexample` is `Some`.
    pub fn record(&mut self, name: &str, anchor: &str, counterexample: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed: counterexample.is_none(),
            witness: counterexample,
            error: None,
        });
    }

    pub fn record_with_witness(&mut self, name: &str, anchor: &str, passed: bool, witness: String) {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed,
            witness: Some(witness),
            error: None,
        });
    }

    pub fn record_numeric(&mut self, name: &str, anchor: &str, error: f64, tolerance: f64, witness: Option<String>) {
        let passed = error.is_finite() && error < tolerance && witness.is_none();
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed,
            witness,
            error: Some(error),
        });
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }
}
