//! Verification reports and the shared case-evaluation harness.

use crate::error::Result;
use crate::graded::{Graded, Kind};
use crate::par;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Named inputs, rendered.
    pub inputs: Vec<(String, String)>,
    /// Rendered `lhs - rhs`.
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    /// The identity being checked, stated as a formula.
    pub reference: String,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
}

impl CheckEntry {
    pub fn pass(name: impl Into<String>, reference: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            reference: reference.into(),
            status: Status::Pass,
            counterexample: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        reference: impl Into<String>,
        counterexample: Counterexample,
    ) -> Self {
        Self {
            name: name.into(),
            reference: reference.into(),
            status: Status::Fail,
            counterexample: Some(counterexample),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Ordered list of check outcomes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.entries.extend(other.entries);
    }

    /// Appends `other` with every entry name prefixed.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.entries {
            e.name = format!("{prefix}{}", e.name);
            self.entries.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(CheckEntry::passed)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A value whose vanishing certifies an identity.
pub trait Residual {
    fn is_zero(&self) -> bool;
    fn render(&self, coords: &[String]) -> String;
}

impl Residual for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn render(&self, coords: &[String]) -> String {
        Scalar::render(self, coords)
    }
}

impl<K: Kind> Residual for Graded<K> {
    fn is_zero(&self) -> bool {
        Graded::is_zero(self)
    }
    fn render(&self, coords: &[String]) -> String {
        Graded::render(self, coords)
    }
}

impl<R: Residual> Residual for Vec<R> {
    fn is_zero(&self) -> bool {
        self.iter().all(Residual::is_zero)
    }
    fn render(&self, coords: &[String]) -> String {
        let parts: Vec<String> = self.iter().map(|r| r.render(coords)).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl<A: Residual, B: Residual> Residual for (A, B) {
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn render(&self, coords: &[String]) -> String {
        format!("({}, {})", self.0.render(coords), self.1.render(coords))
    }
}

/// Evaluates a residual on every case and reports the first nonvanishing one.
///
/// Cases run through [`par::map`]; the reported counterexample is always the
/// earliest failing case in enumeration order.
pub fn verify_cases<C, R, E, D>(
    name: &str,
    reference: &str,
    coords: &[String],
    cases: &[C],
    eval: E,
    describe: D,
) -> CheckEntry
where
    C: Sync,
    R: Residual,
    E: Fn(&C) -> Result<R> + Sync + Send,
    D: Fn(&C) -> Vec<(String, String)>,
{
    let outcomes: Vec<Option<String>> = par::map(cases, |c| match eval(c) {
        Ok(r) if r.is_zero() => None,
        Ok(r) => Some(r.render(coords)),
        Err(e) => Some(format!("error: {e}")),
    });
    match outcomes.into_iter().enumerate().find_map(|(i, o)| o.map(|r| (i, r))) {
        None => CheckEntry::pass(name, reference),
        Some((i, residual)) => CheckEntry::fail(
            name,
            reference,
            Counterexample {
                inputs: describe(&cases[i]),
                residual,
            },
        ),
    }
}
