//! Law-check outcomes with witnesses.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: String,
    /// Number of cases examined before stopping.
    pub cases: u64,
    /// First counterexample, if any.
    pub witness: Option<String>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<LawOutcome>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), checks: Vec::new() }
    }

    /// Runs the cases in order, stopping at the first one that yields a witness.
    pub fn law<I>(&mut self, law: impl Into<String>, cases: I) -> bool
    where
        I: IntoIterator<Item = Option<String>>,
    {
        let mut n = 0;
        let mut witness = None;
        for case in cases {
            n += 1;
            if case.is_some() {
                witness = case;
                break;
            }
        }
        let ok = witness.is_none();
        self.checks.push(LawOutcome { law: law.into(), cases: n, witness });
        ok
    }

    pub fn pass(&mut self, law: impl Into<String>, cases: u64) {
        self.checks.push(LawOutcome { law: law.into(), cases, witness: None });
    }

    pub fn fail(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(LawOutcome { law: law.into(), cases: 1, witness: Some(witness.into()) });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawOutcome::passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &LawOutcome> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn first_violation(&self) -> Option<String> {
        self.violations().next().map(|c| format!("{}: {}", c.law, c.witness.as_deref().unwrap_or("")))
    }

    /// Appends another report's checks, prefixing their law names.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for mut c in other.checks {
            c.law = format!("{prefix}.{}", c.law);
            self.checks.push(c);
        }
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(crate::Error::Laws(Box::new(self)))
        }
    }
}

pub(crate) fn witness(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(msg())
    }
}
