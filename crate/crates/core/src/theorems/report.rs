use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Failure witnesses kept per report; the total count is always recorded.
pub const MAX_FAILURE_WITNESSES: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
        }
    }
}

/// One record of compared quantities, e.g. a class representative with its
/// η and derived length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub note: String,
    pub values: Vec<(String, i64)>,
}

impl Witness {
    pub fn new(note: impl Into<String>) -> Witness {
        Witness {
            note: note.into(),
            values: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl TryInto<i64>) -> Witness {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.values.push((key.to_string(), v));
        self
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.values.len() + 1))?;
        m.serialize_entry("note", &self.note)?;
        for (k, v) in &self.values {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.note)?;
        for (k, v) in &self.values {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub check_name: String,
    pub group_label: String,
    pub status: Status,
    pub cases_checked: usize,
    pub witnesses: Vec<Witness>,
    /// Number of failing cases (witnesses may be truncated).
    pub failures: usize,
    /// Per-case skip reasons with counts.
    pub skipped_cases: BTreeMap<String, usize>,
    /// Which subgroups/elements were iterated over.
    pub scope: String,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.status, Status::Skipped(_))
    }

    /// JSON value following the report schema; `elapsed_ms` is zeroed when
    /// `timings` is false so output can be diffed across runs.
    pub fn to_json(&self, timings: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "check_name": self.check_name,
            "group": self.group_label,
            "status": self.status.as_str(),
            "cases": self.cases_checked,
            "failures": self.failures,
            "witnesses": self.witnesses,
            "skipped_cases": self.skipped_cases,
            "scope": self.scope,
            "elapsed_ms": if timings { self.elapsed.as_secs_f64() * 1e3 } else { 0.0 },
        });
        if let Status::Skipped(reason) = &self.status {
            v["skip_reason"] = serde_json::Value::String(reason.clone());
        }
        v
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match &self.status {
            Status::Pass => "PASS".to_string(),
            Status::Fail => "FAIL".to_string(),
            Status::Skipped(r) => format!("SKIP ({r})"),
        };
        write!(
            f,
            "{status} {} [{}] cases={}",
            self.check_name, self.group_label, self.cases_checked
        )?;
        if self.failures > 0 {
            write!(f, " failures={}", self.failures)?;
        }
        Ok(())
    }
}

/// Accumulates cases for one check on one group.
pub(crate) struct ReportBuilder {
    name: String,
    label: String,
    start: Instant,
    cases: usize,
    failures: usize,
    witnesses: Vec<Witness>,
    skips: BTreeMap<String, usize>,
    scope: String,
}

impl ReportBuilder {
    pub(crate) fn new(name: &str, label: &str) -> Self {
        ReportBuilder {
            name: name.to_string(),
            label: label.to_string(),
            start: Instant::now(),
            cases: 0,
            failures: 0,
            witnesses: Vec::new(),
            skips: BTreeMap::new(),
            scope: String::new(),
        }
    }

    pub(crate) fn scope(&mut self, scope: impl Into<String>) {
        self.scope = scope.into();
    }

    /// Records one case; failing cases keep their witness.
    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.failures <= MAX_FAILURE_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    /// Records one case and always keeps its witness.
    pub(crate) fn record(&mut self, ok: bool, witness: Witness) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
        self.witnesses.push(witness);
    }

    pub(crate) fn note(&mut self, witness: Witness) {
        self.witnesses.push(witness);
    }

    pub(crate) fn skip_case(&mut self, reason: &str) {
        *self.skips.entry(reason.to_string()).or_default() += 1;
    }

    pub(crate) fn skip_all(self, reason: &str) -> VerificationReport {
        let mut r = self.finish("");
        r.status = Status::Skipped(reason.to_string());
        r
    }

    /// `if_empty` is the skip reason used when no case was checked.
    pub(crate) fn finish(self, if_empty: &str) -> VerificationReport {
        let status = if self.failures > 0 {
            Status::Fail
        } else if self.cases == 0 {
            let reason = if if_empty.is_empty() {
                "no instances".to_string()
            } else {
                if_empty.to_string()
            };
            Status::Skipped(reason)
        } else {
            Status::Pass
        };
        VerificationReport {
            check_name: self.name,
            group_label: self.label,
            status,
            cases_checked: self.cases,
            witnesses: self.witnesses,
            failures: self.failures,
            skipped_cases: self.skips,
            scope: self.scope,
            elapsed: self.start.elapsed(),
        }
    }
}
