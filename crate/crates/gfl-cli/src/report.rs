//! Machine-readable run reports.
//!
//! Every command prints exactly one JSON report on stdout: the command
//! line it answers, a verdict, and the evidence (certificates, a
//! partition, table rows, or search statistics). Exit codes are a
//! function of the verdict alone. In deterministic mode all timing
//! fields are omitted so reports are byte-identical across runs.

use gfl_core::detect::Certificate;
use gfl_core::gallai::GallaiPartition;
use gfl_core::bounds::BoundRow;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::search::SearchOutcome;

/// Final classification of a command run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportVerdict {
    /// Checks ran and nothing was violated.
    Ok,
    /// A forbidden structure was found; certificates list it.
    Violation,
    /// The input is not rainbow-triangle-free where it must be.
    RainbowPresent,
    /// A search explored its whole tree without finding a witness.
    Exhausted,
    /// A search produced a witness coloring.
    Witness,
    /// A search hit its node or time cap first.
    BudgetExceeded,
}

impl ReportVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportVerdict::Ok => "ok",
            ReportVerdict::Violation => "violation",
            ReportVerdict::RainbowPresent => "rainbow_present",
            ReportVerdict::Exhausted => "exhausted",
            ReportVerdict::Witness => "witness",
            ReportVerdict::BudgetExceeded => "budget_exceeded",
        }
    }

    /// Process exit code for this verdict: 0 clean, 2 witness or
    /// violation, 3 out of budget. (1 is reserved for usage, format,
    /// and I/O errors, which never produce a report.)
    pub fn exit_code(self) -> i32 {
        match self {
            ReportVerdict::Ok | ReportVerdict::Exhausted => 0,
            ReportVerdict::Violation | ReportVerdict::RainbowPresent | ReportVerdict::Witness => 2,
            ReportVerdict::BudgetExceeded => 3,
        }
    }

    pub fn from_search(v: crate::search::Verdict) -> Self {
        match v {
            crate::search::Verdict::Exhausted => ReportVerdict::Exhausted,
            crate::search::Verdict::Witness => ReportVerdict::Witness,
            crate::search::Verdict::BudgetExceeded => ReportVerdict::BudgetExceeded,
        }
    }
}

impl Serialize for ReportVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Statistics block of one search run.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub verdict: ReportVerdict,
    pub nodes: u64,
    pub prunes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_secs: Option<f64>,
    /// Witness coloring in .gcg text form, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_gcg: Option<String>,
}

impl SearchReport {
    pub fn from_outcome(out: &SearchOutcome, deterministic: bool) -> Self {
        SearchReport {
            verdict: ReportVerdict::from_search(out.verdict),
            nodes: out.stats.nodes,
            prunes: out.stats.prunes,
            elapsed_secs: if deterministic { None } else { Some(out.stats.elapsed.as_secs_f64()) },
            witness_gcg: out.witness.as_ref().map(|g| g.serialize()),
        }
    }
}

/// One labeled sub-search inside a compound check (e.g. the below- and
/// at-threshold runs of a Ramsey re-verification).
#[derive(Debug, Clone, Serialize)]
pub struct NamedSearchReport {
    pub label: String,
    pub order: usize,
    #[serde(flatten)]
    pub report: SearchReport,
}

/// Bound-table block: main rows plus the optional companion tables.
#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub rows: Vec<BoundRow>,
    /// Useful-color threshold rows, included for the f2 family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub useful_rows: Option<Vec<BoundRow>>,
    /// Two-color threshold row for the fan of the given n.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fan_ramsey: Option<BoundRow>,
}

/// The single JSON document a command prints.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    /// Echo of the command line being answered.
    pub command: Vec<String>,
    pub verdict: ReportVerdict,
    /// SHA-256 of the input .gcg bytes, when a file was read.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<GallaiPartition>,
    /// Quotient graph of the partition, in .gcg text form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_gcg: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<NamedSearchReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_secs: Option<f64>,
}

impl Report {
    pub fn new(command: Vec<String>, verdict: ReportVerdict) -> Self {
        Report {
            command,
            verdict,
            input_digest: None,
            certificates: Vec::new(),
            order: None,
            output: None,
            output_digest: None,
            partition: None,
            reduced_gcg: None,
            table: None,
            search: None,
            checks: Vec::new(),
            elapsed_secs: None,
        }
    }

    /// Serialize to the single-line JSON document printed on stdout.
    ///
    /// Violation verdicts must present evidence; this is the invariant
    /// that makes exit code 2 auditable.
    pub fn to_json(&self) -> String {
        if self.verdict == ReportVerdict::Violation || self.verdict == ReportVerdict::RainbowPresent
        {
            assert!(
                !self.certificates.is_empty(),
                "violation report without a certificate"
            );
        }
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// Lowercase hex SHA-256 of raw bytes; the digest used for .gcg files.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        use core::fmt::Write;
        write!(s, "{b:02x}").expect("writing to String cannot fail");
    }
    s
}
