//! Named numerical checks collected into suites.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Passes when the value is below the tolerance.
    Residual,
    /// Passes when the value is above the threshold (rank and conditioning tests).
    Floor,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub kind: CheckKind,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    fn push(&mut self, suite: &str, name: &str, value: f64, tol: f64, kind: CheckKind) {
        assert!(
            self.get(suite, name).is_none(),
            "duplicate check {suite}/{name}"
        );
        let passed = match kind {
            CheckKind::Residual => value < tol,
            CheckKind::Floor => value > tol,
        };
        self.checks.push(Check {
            suite: suite.to_string(),
            name: name.to_string(),
            value,
            tol,
            kind,
            passed,
        });
    }

    pub fn residual(&mut self, suite: &str, name: &str, value: f64, tol: f64) {
        self.push(suite, name, value, tol, CheckKind::Residual);
    }

    pub fn floor(&mut self, suite: &str, name: &str, value: f64, threshold: f64) {
        self.push(suite, name, value, threshold, CheckKind::Floor);
    }

    /// Boolean outcome recorded as residual 0 or 1.
    pub fn flag(&mut self, suite: &str, name: &str, ok: bool) {
        self.push(suite, name, if ok { 0.0 } else { 1.0 }, 0.5, CheckKind::Residual);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(&c.suite, &c.name, c.value, c.tol, c.kind);
        }
    }

    pub fn get(&self, suite: &str, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.suite == suite && c.name == name)
    }

    pub fn value(&self, suite: &str, name: &str) -> f64 {
        self.get(suite, name)
            .unwrap_or_else(|| panic!("no check {suite}/{name}"))
            .value
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Largest value among residual-type checks.
    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Residual)
            .map(|c| c.value)
            .fold(0.0, f64::max)
    }

    /// The same checks filed under another suite name.
    pub fn renamed(self, suite: &str) -> Report {
        Report {
            checks: self
                .checks
                .into_iter()
                .map(|mut c| {
                    c.suite = suite.to_string();
                    c
                })
                .collect(),
        }
    }

    pub fn suite(&self, suite: &str) -> Report {
        Report {
            checks: self.checks.iter().filter(|c| c.suite == suite).cloned().collect(),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sw = self.checks.iter().map(|c| c.suite.len()).max().unwrap_or(0);
        let nw = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let cmp = match c.kind {
                CheckKind::Residual => "<",
                CheckKind::Floor => ">",
            };
            writeln!(
                f,
                "{} {:<sw$} {:<nw$} {:>10.3e} {} {:.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.value,
                cmp,
                c.tol
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_and_fail() {
        let mut r = Report::new();
        r.residual("s", "small", 1e-12, 1e-9);
        r.floor("s", "rank", 0.5, 1e-9);
        assert!(r.passed());
        r.residual("s", "big", 1e-3, 1e-9);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().name, "big");
        assert_eq!(r.max_residual(), 1e-3);
    }

    #[test]
    #[should_panic(expected = "duplicate")]
    fn duplicate_names_rejected() {
        let mut r = Report::new();
        r.residual("s", "a", 0.0, 1.0);
        r.residual("s", "a", 0.0, 1.0);
    }
}
