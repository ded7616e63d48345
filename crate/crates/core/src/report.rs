//! Reports: lists of claims, each backed by a certificate that the
//! standalone verifier can re-check from the report file alone.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub instances: Vec<String>,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn instance(&mut self, description: impl Into<String>) -> &mut Self {
        self.instances.push(description.into());
        self
    }

    /// Record a claim. It passes only if it holds and its certificate
    /// verifies; a claim without a certificate cannot pass.
    pub fn check(
        &mut self,
        id: impl Into<String>,
        statement: impl Into<String>,
        holds: bool,
        certificate: Option<Certificate>,
    ) -> &mut Claim {
        let certified = certificate.as_ref().is_some_and(Certificate::verify);
        let status = if holds && certified {
            Status::Pass
        } else {
            Status::Fail
        };
        self.claims.push(Claim {
            id: id.into(),
            statement: statement.into(),
            status,
            values: BTreeMap::new(),
            certificate,
        });
        self.claims.last_mut().expect("just pushed")
    }

    pub fn skip(&mut self, id: impl Into<String>, statement: impl Into<String>) {
        self.claims.push(Claim {
            id: id.into(),
            statement: statement.into(),
            status: Status::Skipped,
            values: BTreeMap::new(),
            certificate: None,
        });
    }

    /// Append another report's instances and claims, prefixing claim ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.instances.extend(other.instances);
        for mut c in other.claims {
            c.id = format!("{prefix}/{}", c.id);
            self.claims.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.claims
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect()
    }

    /// 0 when every claim passes (or is skipped), 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for i in &self.instances {
            let _ = writeln!(out, "instance: {i}");
        }
        for c in &self.claims {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(out, "[{tag}] {}: {}", c.id, c.statement);
            for (k, v) in &c.values {
                let _ = writeln!(out, "    {k} = {v}");
            }
        }
        let fails = self.failures().len();
        let _ = writeln!(out, "{} claims, {} failed", self.claims.len(), fails);
        out
    }
}

impl Claim {
    pub fn value(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.values.insert(key.into(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl VerifyOutcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-check every claim of a report. A passing claim must carry a
/// certificate that verifies; a failing claim is itself a failure.
pub fn verify_report(report: &Report) -> VerifyOutcome {
    let mut out = VerifyOutcome::default();
    for c in &report.claims {
        match c.status {
            Status::Skipped => out.skipped += 1,
            Status::Fail => out.failures.push(format!("{}: recorded as failing", c.id)),
            Status::Pass => {
                out.checked += 1;
                match &c.certificate {
                    None => out.failures.push(format!("{}: no certificate", c.id)),
                    Some(cert) if !cert.verify() => out
                        .failures
                        .push(format!("{}: certificate does not verify", c.id)),
                    Some(_) => {}
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{int, RMat};

    fn trace_cert(v: i64) -> Certificate {
        Certificate::Trace {
            matrix: RMat::identity(2),
            value: int(v),
        }
    }

    #[test]
    fn statuses_follow_certificates() {
        let mut r = Report::new("test");
        r.check("a", "trace is 2", true, Some(trace_cert(2)));
        r.check("b", "claim without certificate", true, None);
        r.check("c", "bad certificate", true, Some(trace_cert(3)));
        r.skip("d", "not applicable");
        assert_eq!(r.claims[0].status, Status::Pass);
        assert_eq!(r.claims[1].status, Status::Fail);
        assert_eq!(r.claims[2].status, Status::Fail);
        assert_eq!(r.exit_code(), 1);
        let v = verify_report(&r);
        assert_eq!(v.checked, 1);
        assert_eq!(v.skipped, 1);
        assert_eq!(v.failures.len(), 2);
    }

    #[test]
    fn tampered_report_is_caught() {
        let mut r = Report::new("test");
        r.check("a", "trace is 2", true, Some(trace_cert(2)));
        assert!(verify_report(&r).ok());
        let mut text = serde_json::to_string(&r).unwrap();
        text = text.replace("\"value\":\"2\"", "\"value\":\"5\"");
        let back: Report = serde_json::from_str(&text).unwrap();
        assert!(!verify_report(&back).ok());
        assert!(r.to_text().contains("[PASS] a"));
    }
}
