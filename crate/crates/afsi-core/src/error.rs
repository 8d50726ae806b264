//! Crate-level error type. Each stage keeps its own error; this enum carries
//! whichever stage failed first, unmodified.

use crate::aggregate::AggregateError;
use crate::analysis::AnalysisError;
use crate::ingest::ParseError;
use crate::model::ValidationReport;
use crate::normalize::NormalizeError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Aggregate(#[from] AggregateError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}
