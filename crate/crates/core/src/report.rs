//! Verdict reports shared by every verifier.

use std::fmt;
use std::time::{Duration, Instant};

use crate::oracle::CheckOutcome;

/// The first nonzero component of an obstruction tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Human-readable location, e.g. `[P,P]^{x1 x2 x3}`.
    pub component: String,
    /// Zero-based component indices into the tensor's chart (or algebra basis).
    pub indices: Vec<usize>,
    /// The nonzero value, printed in the polynomial grammar.
    pub value: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.component, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
    /// The check could not run because a prerequisite failed.
    Blocked(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }

    pub fn from_witness(witness: Option<Witness>) -> Self {
        witness.map_or(Verdict::Pass, Verdict::Fail)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail(_) => "FAIL",
            Verdict::Blocked(_) => "BLOCKED",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    /// Only mandatory checks decide the overall verdict.
    pub mandatory: bool,
    pub verdict: Verdict,
    pub oracle: Option<CheckOutcome>,
    pub elapsed: Duration,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Self {
        Check {
            name: name.into(),
            mandatory: true,
            verdict,
            oracle: None,
            elapsed: Duration::ZERO,
        }
    }

    /// Runs `f` and records its wall-clock time.
    pub fn timed(name: impl Into<String>, f: impl FnOnce() -> Verdict) -> Self {
        let start = Instant::now();
        let verdict = f();
        Check {
            elapsed: start.elapsed(),
            ..Check::new(name, verdict)
        }
    }

    pub fn optional(mut self) -> Self {
        self.mandatory = false;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass() && self.oracle.as_ref().is_none_or(|o| o.passed)
    }
}

/// Ordered list of named checks plus free-form notes.
#[derive(Debug, Clone, Default)]
pub struct StructureReport {
    pub checks: Vec<Check>,
    /// Declared assumptions and warnings that do not affect the verdict.
    pub notes: Vec<String>,
}

impl StructureReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    /// Appends every check of `other`, renamed `prefix.name`.
    pub fn absorb(&mut self, prefix: &str, other: StructureReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        for n in other.notes {
            self.note(n);
        }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut Check> {
        self.checks.iter_mut().find(|c| c.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.get(name).map(|c| &c.verdict)
    }

    /// PASS iff every mandatory check passes (including its oracle outcome, if any).
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.mandatory).all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.mandatory && !c.passed())
    }
}
