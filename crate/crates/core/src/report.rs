use std::fmt;

use serde::Serialize;

/// Outcome of a single verification line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Ok,
    Fail,
    /// Disagreement with stored data that is documented and expected.
    Flagged,
    /// Randomized check that did not reach a verdict.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "OK",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAGGED",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportLine {
    pub label: String,
    pub detail: String,
    pub status: Status,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}, {}", self.label, self.detail, self.status)
    }
}

/// Line-per-item verification report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            lines: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, detail: impl Into<String>, status: Status) {
        self.lines.push(ReportLine {
            label: label.into(),
            detail: detail.into(),
            status,
        });
    }

    pub fn check(&mut self, label: impl Into<String>, detail: impl Into<String>, ok: bool) {
        self.push(label, detail, if ok { Status::Ok } else { Status::Fail });
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn count(&self, status: Status) -> usize {
        self.lines.iter().filter(|l| l.status == status).count()
    }

    /// No line failed or stayed inconclusive. Flagged lines are accepted.
    pub fn passed(&self) -> bool {
        self.lines
            .iter()
            .all(|l| matches!(l.status, Status::Ok | Status::Flagged))
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines
            .iter()
            .filter(|l| matches!(l.status, Status::Fail | Status::Inconclusive))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "== {} ==", self.title)?;
        }
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        write!(
            f,
            "{} ok, {} failed, {} flagged, {} inconclusive",
            self.count(Status::Ok),
            self.count(Status::Fail),
            self.count(Status::Flagged),
            self.count(Status::Inconclusive)
        )
    }
}
