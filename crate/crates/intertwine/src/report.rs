//! Check results shared by every verification routine.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    /// Short name of the identity being checked.
    pub identity: String,
    /// Stable tag grouping checks of the same identity across suites.
    pub tag: String,
    /// The objects or arrows the identity was instantiated on.
    pub item: String,
    pub status: Status,
    /// Max-entry residual (zero for exact passes).
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn new(identity: &str, tag: &str, item: impl Into<String>, pass: bool, residual: f64) -> Self {
        CheckResult {
            identity: identity.to_string(),
            tag: tag.to_string(),
            item: item.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            residual,
            note: None,
        }
    }

    pub fn skipped(identity: &str, tag: &str, item: impl Into<String>, why: &str) -> Self {
        CheckResult {
            identity: identity.to_string(),
            tag: tag.to_string(),
            item: item.into(),
            status: Status::Skipped,
            residual: 0.0,
            note: Some(why.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub scalar: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(suite: &str, scalar: &str) -> Self {
        Report { suite: suite.to_string(), scalar: scalar.to_string(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = CheckResult>) {
        self.checks.extend(cs);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} ({})\n", self.suite, self.scalar);
        for c in &self.checks {
            let st = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{st} [{}] {} :: {} residual={:.3e}", c.tag, c.identity, c.item, c.residual));
            if let Some(n) = &c.note {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "total {} pass {} fail {} skip {}\n",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }
}
