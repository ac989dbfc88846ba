use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::Command;
use crate::report::{table, CheckResult, Report, SCHEMA};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceInfo {
    pub name: String,
    pub command: Command,
    pub seed: u64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedCheck {
    pub source: String,
    #[serde(flatten)]
    pub check: CheckResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergedReport {
    pub schema: String,
    pub sources: Vec<SourceInfo>,
    pub checks: Vec<MergedCheck>,
}

impl MergedReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.check.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("merged reports serialize");
        s.push('\n');
        s
    }

    pub fn table(&self) -> String {
        table(self.checks.iter().map(|c| (Some(c.source.as_str()), &c.check)))
    }
}

/// Reads a report, refusing any other schema version before looking at the rest of the file.
pub fn load(path: &Path) -> Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

pub fn parse(text: &str) -> Result<Report> {
    let value: serde_json::Value = serde_json::from_str(text).context("not JSON")?;
    match value.get("schema").and_then(|s| s.as_str()) {
        Some(SCHEMA) => {}
        Some(other) => bail!("schema mismatch: expected {SCHEMA}, found {other}"),
        None => bail!("schema mismatch: no schema field, expected {SCHEMA}"),
    }
    Ok(serde_json::from_value(value).context("malformed report")?)
}

/// Union of the checks, ordered by id. The same id from two sources is accepted only when both
/// entries are identical.
pub fn merge(inputs: &[(String, Report)]) -> Result<MergedReport> {
    let mut by_id: BTreeMap<&str, MergedCheck> = BTreeMap::new();
    for (name, report) in inputs {
        if report.schema != SCHEMA {
            bail!("schema mismatch in {name}: expected {SCHEMA}, found {}", report.schema);
        }
        for c in &report.checks {
            if let Some(prev) = by_id.get(c.id.as_str()) {
                if prev.check != *c {
                    bail!("conflicting results for check {} in {} and {}", c.id, prev.source, name);
                }
                continue;
            }
            by_id.insert(&c.id, MergedCheck { source: name.clone(), check: c.clone() });
        }
    }
    Ok(MergedReport {
        schema: SCHEMA.into(),
        sources: inputs
            .iter()
            .map(|(name, r)| SourceInfo { name: name.clone(), command: r.config.command, seed: r.seed, passed: r.passed() })
            .collect(),
        checks: by_id.into_values().collect(),
    })
}
