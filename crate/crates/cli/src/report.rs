//! Run reports and the exit-code contract.

use std::fmt;
use std::process::ExitCode;

use goe_core::algebra::AlgebraError;
use goe_core::homoclinic::HomoclinicError;
use goe_core::symbolic::SymbolicError;
use goe_core::toral::ToralError;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub verdicts: Value,
    pub timing_ms: u64,
    pub version: &'static str,
    pub seed: Option<u64>,
}

/// What a command produced before timing and versioning are attached.
pub struct Outcome {
    pub inputs: Value,
    pub verdicts: Value,
    pub summary: String,
    /// Replaces the JSON report on stdout unless `--json` is given.
    pub plain: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Resource(String),
    Precondition(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Failed(_) => ExitCode::from(1),
            CliError::Parse(_) => ExitCode::from(2),
            CliError::Resource(_) => ExitCode::from(3),
            CliError::Precondition(_) => ExitCode::from(4),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
            CliError::Precondition(m) => write!(f, "precondition failed: {m}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            _ if e.is_resource_limit() => CliError::Resource(e.to_string()),
            AlgebraError::Parse(m) => CliError::Parse(m),
            AlgebraError::EmptyMatrix | AlgebraError::NotSquare { .. } => CliError::Parse(e.to_string()),
            AlgebraError::DimensionMismatch { .. } | AlgebraError::ZeroConstantTerm => {
                CliError::Precondition(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<ToralError> for CliError {
    fn from(e: ToralError) -> Self {
        match e {
            ToralError::Algebra(inner) => inner.into(),
            ToralError::Parse(m) => CliError::Parse(m),
            ToralError::NotCommuting | ToralError::DimensionMismatch { .. } => CliError::Precondition(e.to_string()),
            ToralError::IncompleteBasis(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<HomoclinicError> for CliError {
    fn from(e: HomoclinicError) -> Self {
        match e {
            _ if e.is_resource_limit() => CliError::Resource(e.to_string()),
            HomoclinicError::Toral(inner) => inner.into(),
            HomoclinicError::Algebra(inner) => inner.into(),
            HomoclinicError::NotHyperbolic
            | HomoclinicError::NotCommuting
            | HomoclinicError::DimensionMismatch { .. }
            | HomoclinicError::InvalidArgument(_) => CliError::Precondition(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<SymbolicError> for CliError {
    fn from(e: SymbolicError) -> Self {
        match e {
            _ if e.is_resource_limit() => CliError::Resource(e.to_string()),
            SymbolicError::InvalidPresentation(_) | SymbolicError::InvalidCode(_) | SymbolicError::EmptyShift => {
                CliError::Parse(e.to_string())
            }
            SymbolicError::AlphabetMismatch { .. }
            | SymbolicError::NotPreserved(_)
            | SymbolicError::InvalidArgument(_)
            | SymbolicError::WordTooShort { .. } => CliError::Precondition(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
