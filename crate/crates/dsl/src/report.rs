//! Machine-readable and human-readable reports.
//!
//! ```text
//! { "command", "seed", "checks": [ { "name", "paper_ref", "status",
//!   "counterexample"?: { "inputs": { name: value, ... }, "residual" } } ],
//!   "output"?, "error"? }
//! ```
//!
//! `paper_ref` carries the identity being checked as a formula. Input order
//! is preserved. Reports contain nothing run-dependent, so identical
//! invocations produce identical bytes.

use std::fmt::Write;

use algebroid::{CheckEntry, CheckReport};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::DslError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inputs(pub Vec<(String, String)>);

impl Serialize for Inputs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Inputs,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub paper_ref: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub line: u32,
    pub column: u32,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl From<&CheckEntry> for Check {
    fn from(e: &CheckEntry) -> Self {
        Check {
            name: e.name.clone(),
            paper_ref: e.reference.clone(),
            status: e.status.as_str().to_string(),
            counterexample: e.counterexample.as_ref().map(|c| Counterexample {
                inputs: Inputs(c.inputs.clone()),
                residual: c.residual.clone(),
            }),
        }
    }
}

impl Report {
    pub fn new(command: String, seed: u64, checks: &CheckReport, output: Option<String>) -> Self {
        Self { command, seed, checks: checks.entries.iter().map(Check::from).collect(), output, error: None }
    }

    pub fn failed(command: String, seed: u64, err: &DslError) -> Self {
        Self {
            command,
            seed,
            checks: Vec::new(),
            output: None,
            error: Some(ErrorInfo {
                kind: err.kind.as_str().to_string(),
                line: err.pos.line,
                column: err.pos.col,
                message: err.message.clone(),
            }),
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.status == "pass")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} (seed {})", self.command, self.seed).unwrap();
        if let Some(out) = &self.output {
            s.push('\n');
            s.push_str(out);
            if !out.ends_with('\n') {
                s.push('\n');
            }
            s.push('\n');
        }
        for c in &self.checks {
            let tag = if c.status == "pass" { "PASS" } else { "FAIL" };
            writeln!(s, "{tag}  {}", c.name).unwrap();
            if let Some(cx) = &c.counterexample {
                writeln!(s, "      identity: {}", c.paper_ref).unwrap();
                for (k, v) in &cx.inputs.0 {
                    writeln!(s, "      {k} = {v}").unwrap();
                }
                writeln!(s, "      residual: {}", cx.residual).unwrap();
            }
        }
        let failed = self.checks.iter().filter(|c| c.status != "pass").count();
        writeln!(s, "{} checks, {failed} failed", self.checks.len()).unwrap();
        s
    }
}
