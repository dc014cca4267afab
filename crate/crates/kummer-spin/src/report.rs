//! Check rows, suite reports and seeded randomness shared by all suites.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity or property being verified.
    pub identity: String,
    pub status: Status,
    pub detail: String,
    /// Structured output such as bases, ranks or witnesses.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, identity: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            identity: identity.into(),
            status: Status::from_bool(passed),
            detail: detail.into(),
            data: Value::Null,
        }
    }

    pub fn skipped(name: impl Into<String>, identity: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { status: Status::Skipped, ..Check::new(name, identity, false, detail) }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64, checks: Vec<Check>) -> Self {
        SuiteReport { suite: suite.into(), seed, checks, elapsed_ms: 0 }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn reports_json(reports: &[SuiteReport]) -> Value {
    let ok = reports.iter().all(SuiteReport::all_passed);
    json!({
        "schema": SCHEMA_VERSION,
        "status": if ok { "pass" } else { "fail" },
        "suites": reports,
    })
}

pub fn reports_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "== {} (seed {}, {} ms)", r.suite, r.seed, r.elapsed_ms);
        for c in &r.checks {
            let _ = writeln!(out, "  [{}] {}: {} -- {}", c.status.as_str(), c.name, c.identity, c.detail);
        }
    }
    let ok = reports.iter().all(SuiteReport::all_passed);
    let _ = writeln!(out, "overall: {}", if ok { "pass" } else { "fail" });
    out
}

/// FNV-1a, used to derive a per-suite ChaCha stream.
fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

pub fn suite_rng(seed: u64, suite: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(suite));
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngExt;

    #[test]
    fn suite_streams_are_independent_and_stable() {
        let a: u64 = suite_rng(7, "stabilizer").random();
        let b: u64 = suite_rng(7, "stabilizer").random();
        let c: u64 = suite_rng(7, "weil").random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn skipped_rows_do_not_fail() {
        let r = SuiteReport::new("x", 0, vec![Check::skipped("a", "b", "c"), Check::new("d", "e", true, "")]);
        assert!(r.all_passed());
        let j = reports_json(&[r]);
        assert_eq!(j["schema"], 1);
        assert_eq!(j["suites"][0]["checks"][0]["status"], "skipped");
    }
}
