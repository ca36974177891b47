//! Structured verification outcomes.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Seeded { seed: u64, trials: u64 },
    /// Exhaustive over linear slots, seeded over the constrained inputs.
    Mixed { seed: u64, trials: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Nothing to check (e.g. no zero-product pairs were found).
    VacuousPass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn is_pass(self) -> bool {
        matches!(self, Status::Pass | Status::VacuousPass)
    }
}

/// The inputs and value that falsify a check, rendered with basis labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub value: String,
}

impl Counterexample {
    pub fn new(inputs: Vec<String>, value: impl Into<String>) -> Self {
        Counterexample { inputs, value: value.into() }
    }
}

/// One named sub-check inside a [`Report`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub cases_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, cases_checked: u64) -> Self {
        Check { name: name.into(), status: Status::Pass, cases_checked, counterexample: None, detail: None }
    }

    pub fn vacuous(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::VacuousPass, cases_checked: 0, counterexample: None, detail: None }
    }

    pub fn fail(name: impl Into<String>, cases_checked: u64, cx: Counterexample) -> Self {
        Check { name: name.into(), status: Status::Fail, cases_checked, counterexample: Some(cx), detail: None }
    }

    /// Pass when `cx` is `None`, fail otherwise.
    pub fn from_outcome(name: impl Into<String>, cases_checked: u64, cx: Option<Counterexample>) -> Self {
        match cx {
            None => Check::pass(name, cases_checked),
            Some(cx) => Check::fail(name, cases_checked, cx),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Aggregate result of one verifier on one algebra.
///
/// `status == Fail` exactly when `counterexample` is present; it is the
/// counterexample of the first failing check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub statement_id: String,
    pub algebra: String,
    pub mode: Mode,
    pub status: Status,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    pub cases_checked: u64,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(statement_id: impl Into<String>, algebra: impl Into<String>, mode: Mode) -> Self {
        Report {
            statement_id: statement_id.into(),
            algebra: algebra.into(),
            mode,
            status: Status::VacuousPass,
            passed: true,
            counterexample: None,
            cases_checked: 0,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn not_applicable(
        statement_id: impl Into<String>,
        algebra: impl Into<String>,
        mode: Mode,
        reason: impl Into<String>,
    ) -> Self {
        let mut r = Report::new(statement_id, algebra, mode);
        r.status = Status::NotApplicable;
        r.passed = false;
        r.notes.push(reason.into());
        r
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
        self.refresh();
    }

    fn refresh(&mut self) {
        if self.status == Status::NotApplicable {
            return;
        }
        self.cases_checked = self.checks.iter().map(|c| c.cases_checked).sum();
        self.counterexample = self
            .checks
            .iter()
            .find(|c| c.status == Status::Fail)
            .and_then(|c| c.counterexample.clone());
        self.status = if self.counterexample.is_some() {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::VacuousPass
        };
        self.passed = self.status.is_pass();
    }

    /// Checks the status/counterexample invariant.
    pub fn is_consistent(&self) -> bool {
        (self.status == Status::Fail) == self.counterexample.is_some() && self.passed == self.status.is_pass()
    }
}
