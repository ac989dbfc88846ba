use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

/// Bumped whenever the JSON layout changes; merging refuses mixed versions.
pub const SCHEMA: &str = "cubical-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    /// Unique within a report, `suite.name`.
    pub id: String,
    /// The statement being checked.
    pub anchor: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub seed: u64,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// Checks are ordered by id so the file does not depend on scheduling.
    pub fn new(config: &RunConfig, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Self { schema: SCHEMA.into(), seed: config.seed, config: config.clone(), checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        table(self.checks.iter().map(|c| (None, c)))
    }
}

/// One line per check: status, id, optional source, anchor.
pub fn table<'a, I>(rows: I) -> String
where
    I: IntoIterator<Item = (Option<&'a str>, &'a CheckResult)>,
{
    let rows: Vec<_> = rows.into_iter().collect();
    let width = rows.iter().map(|(_, c)| c.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (source, c) in &rows {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let _ = match source {
            Some(s) => writeln!(out, "{status}  {:width$}  [{s}]  {}", c.id, c.anchor),
            None => writeln!(out, "{status}  {:width$}  {}", c.id, c.anchor),
        };
    }
    let failed = rows.iter().filter(|(_, c)| !c.pass).count();
    let _ = writeln!(out, "{} checks, {} failed", rows.len(), failed);
    out
}

/// Result of one check body: a verdict and whatever evidence is worth keeping.
pub struct Outcome {
    pub pass: bool,
    pub detail: Value,
}

impl Outcome {
    pub fn new(pass: bool, detail: Value) -> Self {
        Self { pass, detail }
    }
}

/// Runs a check body; an error (say a window overflow) becomes a failed check carrying the message.
pub fn run_check<F>(id: &str, anchor: &str, body: F) -> CheckResult
where
    F: FnOnce() -> anyhow::Result<Outcome>,
{
    let (pass, detail) = match body() {
        Ok(o) => (o.pass, o.detail),
        Err(e) => (false, serde_json::json!({ "error": format!("{e:#}") })),
    };
    CheckResult { id: id.into(), anchor: anchor.into(), pass, detail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn errors_become_failures() {
        let c = run_check("x.y", "a claim", || anyhow::bail!("window overflow: too small"));
        assert!(!c.pass);
        assert_eq!(c.detail, json!({ "error": "window overflow: too small" }));
    }

    #[test]
    fn checks_are_sorted() {
        let mk = |id: &str| CheckResult { id: id.into(), anchor: String::new(), pass: true, detail: json!(null) };
        let r = Report::new(&RunConfig::default(), vec![mk("b"), mk("a")]);
        assert_eq!(r.checks[0].id, "a");
        assert!(r.table().ends_with("2 checks, 0 failed\n"));
    }
}
