use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Exact,
    Numeric,
}

/// One row of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub status: Status,
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub paper_anchor: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckRecord {
    /// Exact check: passes iff `witness` is `None`.
    pub fn exact(id: &str, anchor: &str, witness: Option<String>) -> Self {
        CheckRecord {
            check_id: id.to_string(),
            status: if witness.is_none() { Status::Pass } else { Status::Fail },
            kind: Kind::Exact,
            residual: None,
            tolerance: None,
            witness,
            paper_anchor: anchor.to_string(),
            detail: None,
        }
    }

    /// Numeric check: passes iff `residual < tolerance` (NaN fails).
    pub fn numeric(id: &str, anchor: &str, residual: f64, tolerance: f64, witness: Option<String>) -> Self {
        let pass = residual < tolerance;
        CheckRecord {
            check_id: id.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            kind: Kind::Numeric,
            residual: Some(residual),
            tolerance: Some(tolerance),
            witness: if pass { None } else { witness },
            paper_anchor: anchor.to_string(),
            detail: None,
        }
    }

    pub fn skipped(id: &str, kind: Kind, anchor: &str, reason: &str) -> Self {
        CheckRecord {
            check_id: id.to_string(),
            status: Status::Skipped,
            kind,
            residual: None,
            tolerance: None,
            witness: None,
            paper_anchor: anchor.to_string(),
            detail: Some(reason.to_string()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub example: String,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub sign_conventions: Vec<String>,
    /// Seconds; kept out of serialized output so reports stay byte-stable.
    #[serde(skip)]
    pub wall_time: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub metadata: ReportMetadata,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(example: &str) -> Self {
        VerificationReport {
            metadata: ReportMetadata { example: example.to_string(), ..Default::default() },
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check_id == id)
    }

    /// True when no executed check failed.
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }
}
