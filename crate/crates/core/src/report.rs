//! Pass/fail records produced by the verification suites.

use serde::Serialize;
use serde_json::Value;

/// One verified statement, with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(check: impl Into<String>, params: Value, pass: bool, witness: Option<String>) -> Check {
        Check { check: check.into(), params, pass, witness: if pass { None } else { witness } }
    }

    pub fn pass(check: impl Into<String>, params: Value) -> Check {
        Check::new(check, params, true, None)
    }

    pub fn fail(check: impl Into<String>, params: Value, witness: impl Into<String>) -> Check {
        Check::new(check, params, false, Some(witness.into()))
    }

    /// Compares two displayable values, recording both on mismatch.
    pub fn equal<T: PartialEq + std::fmt::Display>(check: impl Into<String>, params: Value, lhs: &T, rhs: &T) -> Check {
        if lhs == rhs {
            Check::pass(check, params)
        } else {
            Check::fail(check, params, format!("lhs = {lhs}; rhs = {rhs}"))
        }
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// One line per check: `PASS name params` / `FAIL name params: witness`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            s.push_str(&format!("{status} {} {}", c.check, c.params));
            if let Some(w) = &c.witness {
                s.push_str(&format!(": {w}"));
            }
            s.push('\n');
        }
        s
    }
}

impl FromIterator<Check> for Report {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Self {
        Report { checks: iter.into_iter().collect() }
    }
}
