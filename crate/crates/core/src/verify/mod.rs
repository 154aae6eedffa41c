//! Named check suites over the whole library, each producing a
//! deterministic report of individual checks.

mod algebraic;
mod ledger;
mod sweeps;

pub use ledger::{ledger_entries, LedgerEntry};
pub use sweeps::{golden_corpus, random_rule};

use crate::Result;
use serde::Serialize;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Soundness,
    Ledger,
    LeibnizCrosscheck,
    Facts,
    Subdirect,
    Classification,
    McClassification,
    Derivability,
    Translation,
    EngineSoundness,
    Completeness,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Soundness,
        Suite::Ledger,
        Suite::LeibnizCrosscheck,
        Suite::Facts,
        Suite::Subdirect,
        Suite::Classification,
        Suite::McClassification,
        Suite::Derivability,
        Suite::Translation,
        Suite::EngineSoundness,
        Suite::Completeness,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Soundness => "soundness",
            Suite::Ledger => "ledger",
            Suite::LeibnizCrosscheck => "leibniz-crosscheck",
            Suite::Facts => "facts",
            Suite::Subdirect => "subdirect",
            Suite::Classification => "classification",
            Suite::McClassification => "mc-classification",
            Suite::Derivability => "derivability",
            Suite::Translation => "translation",
            Suite::EngineSoundness => "engine-soundness",
            Suite::Completeness => "completeness",
            Suite::Roundtrip => "roundtrip",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Knobs shared by the suites. `None` selects the suite's own default.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// Largest algebra size swept.
    pub max_size: Option<usize>,
    /// Systems to classify or sweep; empty means the suite's list.
    pub systems: Vec<String>,
    /// Proof search depth.
    pub depth: Option<usize>,
    /// Number of generated rules for the round-trip suite.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_size: None,
            systems: Vec::new(),
            depth: None,
            samples: 10_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Drops the wall-clock timings so that reports compare byte for byte.
    pub fn without_timings(mut self) -> SuiteReport {
        for c in &mut self.checks {
            c.millis = None;
        }
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            if let Some(ms) = c.millis {
                write!(f, " ({ms} ms)")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{}: {} checks, {} failed", self.suite, self.checks.len(), failed)
    }
}

/// Runs `body` and records its outcome as a check.
pub(crate) fn timed(name: impl Into<String>, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name: name.into(),
        passed,
        detail,
        millis: Some(start.elapsed().as_millis() as u64),
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Soundness => sweeps::soundness(cfg)?,
        Suite::Ledger => ledger::run(cfg)?,
        Suite::LeibnizCrosscheck => algebraic::leibniz_crosscheck(cfg)?,
        Suite::Facts => algebraic::facts(cfg)?,
        Suite::Subdirect => algebraic::subdirect(cfg)?,
        Suite::Classification => sweeps::classification(cfg, false)?,
        Suite::McClassification => sweeps::classification(cfg, true)?,
        Suite::Derivability => sweeps::derivability(cfg)?,
        Suite::Translation => sweeps::translation(cfg)?,
        Suite::EngineSoundness => sweeps::engine_soundness(cfg)?,
        Suite::Completeness => sweeps::completeness(cfg)?,
        Suite::Roundtrip => sweeps::roundtrip(cfg)?,
    };
    Ok(SuiteReport { suite, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn errors_become_failed_checks() {
        let c = timed("x", || Err(crate::Error::Precondition("boom".into())));
        assert!(!c.passed);
        assert_eq!(c.detail, "error: boom");
    }
}
