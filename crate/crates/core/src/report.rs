//! Machine-readable verification reports.
//!
//! A failed conjecture check is a first-class result: it is recorded with its
//! obstruction and never aborts the rest of a suite.

use std::time::Instant;

use serde_json::{json, Value};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Best-effort numeric checks that miss tolerance degrade to soft-fail.
    SoftFail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SoftFail => "soft-fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: Option<String>,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport { checks: Vec::new() }
    }

    /// Run a check, timing it and recording pass/fail with the obstruction.
    pub fn run<F: FnOnce() -> Result<()>>(&mut self, id: &str, f: F) {
        self.run_inner(id, false, f)
    }

    /// Like `run`, but a failure is recorded as soft (does not gate exit).
    pub fn run_soft<F: FnOnce() -> Result<()>>(&mut self, id: &str, f: F) {
        self.run_inner(id, true, f)
    }

    fn run_inner<F: FnOnce() -> Result<()>>(&mut self, id: &str, soft: bool, f: F) {
        let t0 = Instant::now();
        let outcome = f();
        let wall_ms = t0.elapsed().as_millis();
        let (status, detail) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(e) => (
                if soft { Status::SoftFail } else { Status::Fail },
                Some(e.to_string()),
            ),
        };
        self.checks.push(Check {
            id: id.to_string(),
            status,
            detail,
            wall_ms,
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// True when no hard failure was recorded.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checks": self
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "id": c.id,
                        "status": c.status.as_str(),
                        "detail": c.detail,
                        "wall_ms": c.wall_ms,
                    })
                })
                .collect::<Vec<_>>(),
            "summary": {
                "pass": self.count(Status::Pass),
                "fail": self.count(Status::Fail),
                "soft_fail": self.count(Status::SoftFail),
            },
        })
    }

    /// One line per check, human-readable.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{:9}] {} ({} ms){}\n",
                c.status.as_str(),
                c.id,
                c.wall_ms,
                c.detail
                    .as_ref()
                    .map(|d| format!(" — {}", d))
                    .unwrap_or_default()
            ));
        }
        out.push_str(&format!(
            "{} pass, {} fail, {} soft-fail\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::SoftFail)
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn failures_are_recorded_not_propagated() {
        let mut rep = VerificationReport::new();
        rep.run("ok-check", || Ok(()));
        rep.run("bad-check", || {
            Err(Error::IdentityFailure {
                check: "x".into(),
                residual: "1".into(),
            })
        });
        rep.run_soft("soft-check", || {
            Err(Error::ToleranceExceeded {
                check: "y".into(),
                residual: 1e-3,
                tol: 1e-4,
            })
        });
        assert_eq!(rep.checks.len(), 3);
        assert!(!rep.all_passed());
        assert_eq!(rep.count(Status::SoftFail), 1);
        let v = rep.to_json();
        assert_eq!(v["summary"]["fail"], 1);
        // soft failures never gate
        let soft_only: Vec<_> = rep
            .checks
            .iter()
            .filter(|c| c.status != Status::Fail)
            .cloned()
            .collect();
        let rep2 = VerificationReport { checks: soft_only };
        assert!(rep2.all_passed());
    }
}
