use std::fmt::Write as _;

use quantale_core::CheckReport;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Check groups, in exit-code order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lattice,
    Quantale,
    Couple,
    Girard,
    Construct,
    Spectrum,
    Logic,
}

impl Suite {
    /// Process exit status when this suite is the first to fail.
    pub fn exit_code(self) -> u8 {
        match self {
            Suite::Lattice => 10,
            Suite::Quantale => 11,
            Suite::Couple => 12,
            Suite::Girard => 13,
            Suite::Construct => 14,
            Suite::Spectrum => 15,
            Suite::Logic => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Quantale => "quantale",
            Suite::Couple => "couple",
            Suite::Girard => "girard",
            Suite::Construct => "construct",
            Suite::Spectrum => "spectrum",
            Suite::Logic => "logic",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportCheck {
    pub suite: Suite,
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    pub witness: Option<String>,
    pub error: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Totals {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    pub inputs_digest: String,
    pub checks: Vec<ReportCheck>,
    pub facts: Vec<Fact>,
    pub totals: Totals,
    pub passed: bool,
}

/// Accumulates checks and facts while a command runs.
#[derive(Default)]
pub struct Builder {
    checks: Vec<ReportCheck>,
    facts: Vec<Fact>,
    inputs: Sha256,
    seed: Option<u64>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Feeds one input into the digest; inputs are length-prefixed.
    pub fn input(&mut self, bytes: &[u8]) {
        self.inputs.update((bytes.len() as u64).to_le_bytes());
        self.inputs.update(bytes);
    }

    pub fn seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn extend(&mut self, suite: Suite, report: CheckReport) {
        self.checks.extend(report.checks.into_iter().map(|c| ReportCheck {
            suite,
            name: c.name,
            anchor: c.anchor,
            passed: c.passed,
            witness: c.witness,
            error: c.error,
        }));
    }

    pub fn check(&mut self, suite: Suite, name: &str, anchor: &str, counterexample: Option<String>) {
        let mut r = CheckReport::new();
        r.record(name, anchor, counterexample);
        self.extend(suite, r);
    }

    pub fn fact(&mut self, name: &str, value: impl ToString) {
        self.facts.push(Fact {
            name: name.to_string(),
            value: value.to_string(),
        });
    }

    pub fn finish(self, command: String) -> Report {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let total = self.checks.len();
        let digest = self.inputs.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Report {
            command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: self.seed,
            inputs_digest: format!("sha256:{hex}"),
            passed: passed == total,
            checks: self.checks,
            facts: self.facts,
            totals: Totals {
                checks: total,
                passed,
                failed: total - passed,
            },
        }
    }
}

impl Report {
    /// 0 if everything passed, otherwise the code of the first failing suite.
    pub fn exit_code(&self) -> u8 {
        self.checks
            .iter()
            .find(|c| !c.passed)
            .map_or(0, |c| c.suite.exit_code())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "quantale {}: {}", self.version, self.command).unwrap();
        writeln!(out, "inputs {}", self.inputs_digest).unwrap();
        if let Some(seed) = self.seed {
            writeln!(out, "seed {seed}").unwrap();
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(out, "[{}] {status} {}", c.suite.name(), c.name).unwrap();
            if let Some(e) = c.error {
                write!(out, " (error {e:.3e})").unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "    {}", c.anchor).unwrap();
            if let Some(w) = &c.witness {
                let label = if c.passed { "witness" } else { "counterexample" };
                writeln!(out, "    {label}: {w}").unwrap();
            }
        }
        for f in &self.facts {
            writeln!(out, "{} = {}", f.name, f.value).unwrap();
        }
        writeln!(
            out,
            "{}: {} checks, {} passed, {} failed",
            if self.passed { "PASS" } else { "FAIL" },
            self.totals.checks,
            self.totals.passed,
            self.totals.failed
        )
        .unwrap();
        out
    }
}
