//! Structured verification reports.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Recorded but not gating (e.g. whether a class equality is also a
    /// table equality).
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Section {
    pub title: String,
    pub records: Vec<CheckRecord>,
}

impl Section {
    pub fn new(title: &str) -> Self {
        Section {
            title: String::from(title),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, id: &str, status: Status, detail: String) {
        self.records.push(CheckRecord {
            id: String::from(id),
            status,
            detail,
        });
    }

    pub fn pass(&mut self, id: &str, detail: String) {
        self.push(id, Status::Pass, detail);
    }

    pub fn fail(&mut self, id: &str, detail: String) {
        self.push(id, Status::Fail, detail);
    }

    pub fn info(&mut self, id: &str, detail: String) {
        self.push(id, Status::Info, detail);
    }

    /// Records a pass/fail according to `ok`.
    pub fn check(&mut self, id: &str, ok: bool, detail: String) {
        self.push(id, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub sections: Vec<Section>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn records(&self) -> impl Iterator<Item = &CheckRecord> {
        self.sections.iter().flat_map(|s| s.records.iter())
    }

    /// The first failing record, if any.
    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.records().find(|r| r.status == Status::Fail)
    }
}
