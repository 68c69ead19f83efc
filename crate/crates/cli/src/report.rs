//! Line-oriented reports with text and machine renderings.

use cohomo_core::quadric::{Status, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "machine" => Some(Format::Machine),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportRecord {
    pub id: String,
    pub status: Status,
    /// Human line for text output.
    pub text: String,
    /// Payload column for machine output (no tabs).
    pub payload: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<ReportRecord>,
}

impl Report {
    pub fn push(&mut self, id: &str, status: Status, text: String, payload: String) {
        debug_assert!(!payload.contains('\t'));
        self.records.push(ReportRecord {
            id: id.to_string(),
            status,
            text,
            payload,
        });
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    /// One line per record, LF endings, deterministic.
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for r in &self.records {
            match format {
                Format::Text => {
                    out.push_str(&r.text);
                }
                Format::Machine => {
                    out.push_str(&r.id);
                    out.push('\t');
                    out.push_str(r.status.as_str());
                    out.push('\t');
                    out.push_str(&r.payload);
                }
            }
            out.push('\n');
        }
        out
    }

    /// Converts the pipeline report; the theorem conclusion prints bare so
    /// the final line of a full run is the verdict itself.
    pub fn from_verification(v: &VerificationReport) -> Report {
        let mut out = Report::default();
        for section in &v.sections {
            for r in &section.records {
                let text = if r.id == "theorem.conclusion" {
                    r.detail.clone()
                } else {
                    format!("[{}] {}: {}", r.status.as_str(), r.id, r.detail)
                };
                out.push(&r.id, r.status, text, r.detail.clone());
            }
        }
        out
    }
}
