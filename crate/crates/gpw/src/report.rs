//! Claim reports and their text/JSON renderings.
//!
//! JSON output is schema-stable and byte-deterministic for a fixed build
//! and inputs: reports are sorted by claim id and the wall-clock runtime
//! is kept out of the serialized form (text mode prints it).

use serde::Serialize;
use std::fmt;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    OutOfScope,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
            Status::OutOfScope => write!(f, "OUT-OF-SCOPE"),
        }
    }
}

/// What to feed back into `gpw check` to replay a failed claim.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Reproducer {
    pub fixture: String,
    pub polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproducer: Option<Reproducer>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl ClaimReport {
    pub fn pass(id: impl Into<String>, details: impl Into<String>) -> Self {
        ClaimReport {
            id: id.into(),
            status: Status::Pass,
            details: details.into(),
            reproducer: None,
            runtime: Duration::ZERO,
        }
    }

    pub fn fail(id: impl Into<String>, details: impl Into<String>) -> Self {
        ClaimReport {
            id: id.into(),
            status: Status::Fail,
            details: details.into(),
            reproducer: None,
            runtime: Duration::ZERO,
        }
    }

    pub fn out_of_scope(id: impl Into<String>, details: impl Into<String>) -> Self {
        ClaimReport {
            id: id.into(),
            status: Status::OutOfScope,
            details: details.into(),
            reproducer: None,
            runtime: Duration::ZERO,
        }
    }

    pub fn with_reproducer(mut self, r: Reproducer) -> Self {
        self.reproducer = Some(r);
        self
    }
}

pub fn render_text(reports: &[ClaimReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let ms = r.runtime.as_millis();
        out.push_str(&format!("{} {} - {} ({ms}ms)\n", r.status, r.id, r.details));
        if let Some(rep) = &r.reproducer {
            out.push_str(&format!(
                "     replay: gpw check {} -g \"{}\"\n",
                rep.fixture, rep.polynomial
            ));
            if let Some(w) = &rep.witness {
                out.push_str(&format!("     witness: {w}\n"));
            }
        }
    }
    out
}

pub fn render_json(reports: &[ClaimReport]) -> String {
    let mut sorted: Vec<&ClaimReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    serde_json::to_string_pretty(&sorted).expect("reports serialize")
}

/// True when no claim failed (out-of-scope claims do not fail a run).
pub fn all_expected(reports: &[ClaimReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_deterministic_and_sorted() {
        let mut a = ClaimReport::pass("b/second", "ok");
        a.runtime = Duration::from_millis(123);
        let b = ClaimReport::fail("a/first", "bad").with_reproducer(Reproducer {
            fixture: "pauli-m2".into(),
            polynomial: "[x1@e, x2@e]".into(),
            witness: None,
        });
        let one = render_json(&[a.clone(), b.clone()]);
        let two = render_json(&[a, b]);
        assert_eq!(one, two);
        assert!(!one.contains("runtime"));
        let first = one.find("a/first").unwrap();
        let second = one.find("b/second").unwrap();
        assert!(first < second);
    }
}
