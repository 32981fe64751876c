use thiserror::Error;

use crate::exactnum::{Natural, Ratio};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}: argument must be positive")]
    Zero(&'static str),
    #[error("{0}: empty input")]
    EmptyInput(&'static str),
    #[error("sigma exponent must be -1, 0 or 1, got {0}")]
    SigmaExponent(i32),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reciprocal sum {actual} does not equal target {target}")]
    SumMismatch { target: Ratio, actual: Ratio },
    #[error("malformed record at {position}: {message}")]
    Malformed { position: String, message: String },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("{n} is not perfect: divisors above 1 sum to {sum}")]
    NotPerfect { n: Natural, sum: Ratio },
    #[error("{d} does not divide part {u}")]
    NonDivisor { u: Natural, d: Natural },
    #[error("part index {index} out of range for {len} parts")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("O operator needs odd q > 1 and even d > 0 (got q = {q}, d = {d})")]
    PreconditionParity { q: Natural, d: Natural },
    #[error("representation has no ({s}, {rs}) pair")]
    PatternAbsent { s: Natural, rs: Natural },
    #[error("node budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable variant name for machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Zero(_) => "Zero",
            Error::EmptyInput(_) => "EmptyInput",
            Error::SigmaExponent(_) => "SigmaExponent",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::Parse(_) => "Parse",
            Error::SumMismatch { .. } => "SumMismatch",
            Error::Malformed { .. } => "Malformed",
            Error::NotApplicable(_) => "NotApplicable",
            Error::NotPerfect { .. } => "NotPerfect",
            Error::NonDivisor { .. } => "NonDivisor",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::PreconditionParity { .. } => "PreconditionParity",
            Error::PatternAbsent { .. } => "PatternAbsent",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
