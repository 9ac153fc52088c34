//! Structured pass/fail reports shared by all validators.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// First failing identity (with indices) or other explanation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Decision regime used, when more than one is possible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn pass(&mut self, name: &str) -> &mut Self {
        self.push(name, Ok(()))
    }

    pub fn fail(&mut self, name: &str, detail: impl Into<String>) -> &mut Self {
        self.push(name, Err(detail.into()))
    }

    pub fn push(&mut self, name: &str, outcome: std::result::Result<(), String>) -> &mut Self {
        let (passed, detail) = match outcome {
            Ok(()) => (true, None),
            Err(d) => (false, Some(d)),
        };
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
            regime: None,
        });
        self
    }

    /// Attach a regime note to the most recent check.
    pub fn with_regime(&mut self, regime: impl Into<String>) -> &mut Self {
        if let Some(last) = self.checks.last_mut() {
            last.regime = Some(regime.into());
        }
        self
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// True when a check with this name exists and passed.
    pub fn passed_check(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("all {} checks passed", self.checks.len()),
            Some(c) => format!(
                "{} failed: {}",
                c.name,
                c.detail.as_deref().unwrap_or("no detail")
            ),
        }
    }
}
