//! Named pass/fail checks. Every verification routine in the crate returns a
//! list of these; the CLI wraps them into its report format. The `anchor`
//! names the law being checked (e.g. "d2", "dim-stab") so a failure can be
//! traced to the identity it violates.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub status: CheckStatus,
    /// For failures: the first offending coordinate/value, for debugging.
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: CheckStatus::Pass,
            detail: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        anchor: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: CheckStatus::Fail,
            detail: Some(detail.into()),
        }
    }

    pub fn of(
        name: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::pass(name, anchor)
        } else {
            Self::fail(name, anchor, detail())
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skip",
        };
        write!(f, "[{s}] {} ({})", self.name, self.anchor)?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

/// True iff every check passed.
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != CheckStatus::Fail)
}

/// Panic with a readable summary if any check failed (test helper).
pub fn assert_all_pass(checks: &[Check]) {
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| c.status == CheckStatus::Fail)
        .map(|c| c.to_string())
        .collect();
    assert!(failures.is_empty(), "failed checks:\n{}", failures.join("\n"));
}
