//! The report document shared by every subcommand.

use plov_core::Error;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::input::{InputEcho, InputError};

pub const TOOL: &str = "plov";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    InvalidInput,
    PreconditionViolated,
    CrossCheckFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::InvalidInput => 1,
            Status::PreconditionViolated => 2,
            Status::CrossCheckFailed => 3,
        }
    }

    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::DimensionMismatch { .. }
            | Error::NotSquare { .. }
            | Error::Empty
            | Error::DegreeOutOfRange { .. }
            | Error::ArityMismatch { .. }
            | Error::BadIndexPair(..) => Status::InvalidInput,
            Error::NotQuasiUnipotent
            | Error::NotUnipotent
            | Error::NotPseudoAnalytic(_)
            | Error::NotSpd(_)
            | Error::OddDimension(_)
            | Error::ZeroForm
            | Error::DegenerateForm => Status::PreconditionViolated,
            Error::InternalCrossCheck(_) => Status::CrossCheckFailed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

/// One named law and whether this run satisfied it. Failed `required`
/// checks turn the exit code into 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub law: String,
    pub pass: bool,
    pub required: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn new(name: &str, law: &str, pass: bool, required: bool, detail: impl Into<String>) -> Self {
        CheckLine { name: name.into(), law: law.into(), pass, required, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default)]
    pub checks: Vec<CheckLine>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            status: Status::Ok,
            input: None,
            result: None,
            error: None,
            checks: Vec::new(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// A finished run: the document for stdout or `--out`, and summary lines for
/// stderr.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub doc: ReportDocument,
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        self.doc.exit_code()
    }

    pub fn failed(mut doc: ReportDocument, e: &Error) -> Self {
        doc.status = Status::of_error(e);
        doc.error = Some(ErrorInfo { kind: error_kind(e).into(), message: e.to_string() });
        Outcome { summary: vec![format!("error: {e}")], doc }
    }

    pub fn invalid_input(command: &str, e: &InputError) -> Self {
        let mut doc = ReportDocument::new(command);
        doc.status = Status::InvalidInput;
        doc.error = Some(ErrorInfo { kind: "invalid-input".into(), message: e.to_string() });
        Outcome { summary: vec![format!("error: {e}")], doc }
    }

    pub fn invalid_flag(mut doc: ReportDocument, message: &str) -> Self {
        doc.status = Status::InvalidInput;
        doc.error = Some(ErrorInfo { kind: "invalid-flag".into(), message: message.into() });
        Outcome { summary: vec![format!("error: {message}")], doc }
    }

    /// Applies the required-check rule to a successful document.
    pub fn finish(mut doc: ReportDocument, mut summary: Vec<String>) -> Self {
        for c in doc.checks.iter().filter(|c| !c.pass) {
            summary.push(format!(
                "{} {}: {} ({})",
                if c.required { "FAIL" } else { "note" },
                c.name,
                c.law,
                c.detail
            ));
        }
        if doc.status == Status::Ok && doc.checks.iter().any(|c| c.required && !c.pass) {
            doc.status = Status::CrossCheckFailed;
        }
        Outcome { doc, summary }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::NotSquare { .. } => "not-square",
        Error::Empty => "empty",
        Error::NotQuasiUnipotent => "not-quasi-unipotent",
        Error::NotUnipotent => "not-unipotent",
        Error::NotPseudoAnalytic(_) => "not-pseudo-analytic",
        Error::NotSpd(_) => "not-spd",
        Error::OddDimension(_) => "odd-dimension",
        Error::DegreeOutOfRange { .. } => "degree-out-of-range",
        Error::ArityMismatch { .. } => "arity-mismatch",
        Error::ZeroForm => "zero-form",
        Error::DegenerateForm => "degenerate-form",
        Error::BadIndexPair(..) => "bad-index-pair",
        Error::InternalCrossCheck(_) => "internal-cross-check",
    }
}
