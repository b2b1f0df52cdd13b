//! Structured check reports: one row per axiom, with a witness on failure.

use std::fmt;

use serde::Serialize;

use crate::linalg::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Informational rows never fail a report.
    Info,
}

/// Where an axiom broke: a description of the input and the nonzero residual.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub at: String,
    pub residual: Vec<Scalar>,
}

impl Witness {
    pub fn new(at: impl Into<String>, residual: Vec<Scalar>) -> Self {
        Witness { at: at.into(), residual }
    }

    pub fn note(at: impl Into<String>) -> Self {
        Witness { at: at.into(), residual: vec![] }
    }
}

/// `Ok` when `v` is zero, otherwise a witness built lazily.
pub fn ensure_zero(v: &[Scalar], at: impl FnOnce() -> String) -> Result<(), Witness> {
    if crate::linalg::is_zero_vec(v) {
        Ok(())
    } else {
        Err(Witness::new(at(), v.to_vec()))
    }
}

pub fn ensure(ok: bool, at: impl FnOnce() -> String) -> Result<(), Witness> {
    if ok {
        Ok(())
    } else {
        Err(Witness::note(at()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckRow {
    pub axiom: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Default)]
pub struct Report {
    pub subject: String,
    pub rows: Vec<CheckRow>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), rows: vec![] }
    }

    /// Runs one axiom check and records it.
    pub fn check(&mut self, axiom: impl Into<String>, f: impl FnOnce() -> Result<(), Witness>) -> bool {
        let axiom = axiom.into();
        match f() {
            Ok(()) => {
                self.rows.push(CheckRow { axiom, status: Status::Pass, note: None, witness: None });
                true
            }
            Err(w) => {
                self.rows.push(CheckRow { axiom, status: Status::Fail, note: None, witness: Some(w) });
                false
            }
        }
    }

    pub fn pass(&mut self, axiom: impl Into<String>, note: impl Into<String>) {
        self.rows.push(CheckRow { axiom: axiom.into(), status: Status::Pass, note: Some(note.into()), witness: None });
    }

    pub fn fail(&mut self, axiom: impl Into<String>, witness: Witness) {
        self.rows.push(CheckRow { axiom: axiom.into(), status: Status::Fail, note: None, witness: Some(witness) });
    }

    pub fn info(&mut self, axiom: impl Into<String>, note: impl Into<String>) {
        self.rows.push(CheckRow { axiom: axiom.into(), status: Status::Info, note: Some(note.into()), witness: None });
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn first_failure(&self) -> Option<&CheckRow> {
        self.failures().next()
    }

    pub fn row(&self, axiom: &str) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.axiom == axiom)
    }

    /// Appends another report's rows under `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut r in other.rows {
            r.axiom = format!("{prefix}: {}", r.axiom);
            self.rows.push(r);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for r in &self.rows {
            let tag = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Info => "info",
            };
            write!(f, "  [{tag}] {}", r.axiom)?;
            if let Some(n) = &r.note {
                write!(f, " ({n})")?;
            }
            if let Some(w) = &r.witness {
                write!(f, "\n         at {}", w.at)?;
                if let Some((k, v)) = crate::linalg::first_nonzero(&w.residual) {
                    write!(f, "; residual[{k}] = {v}")?;
                }
            }
            writeln!(f)?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "  => {verdict}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_row_keeps_witness() {
        let mut r = Report::new("t");
        assert!(r.check("zero", || ensure_zero(&[Scalar::zero()], || "v".into())));
        assert!(!r.check("nonzero", || ensure_zero(&[Scalar::one()], || "e_0".into())));
        r.info("note", "always fine");
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().axiom, "nonzero");
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["rows"][1]["status"], "fail");
        assert_eq!(json["rows"][1]["witness"]["residual"][0], "1");
    }
}
