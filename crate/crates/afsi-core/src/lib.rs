//! Construction of a composite financial stability index from annual
//! macro-financial indicator panels.
//!
//! Nineteen indicators grouped into four sectors (real, fiscal, external,
//! monetary) are standardized, polarity-adjusted, and combined into sector
//! sub-indices and a weighted composite. Every methodological choice that a
//! composite index usually leaves implicit — polarity, weighting mode,
//! aggregation order, dispersion estimator — is an explicit, validated
//! configuration knob.
//!
//! The pipeline is `parse -> validate -> normalize -> aggregate`, with
//! diagnostics (what-if perturbations, sensitivity ranking, year-over-year
//! direction, warning flags) layered on top. All stages are pure functions
//! over immutable data and are safe to call from multiple threads.

pub mod aggregate;
pub mod analysis;
pub mod dataset;
mod error;
pub mod ingest;
pub mod model;
pub mod normalize;

pub use aggregate::{
    composite_afsi, run_pipeline, sub_index, AggregateError, SectorIndexSeries,
    StabilityIndexSeries,
};
pub use analysis::{
    sensitivity_rank, warning_flags, whatif, yoy_direction, AnalysisError, Direction,
    FlagSeverity, Sensitivity, WarningFlag, WhatIfResult, YoyDirection,
};
pub use error::Error;
pub use ingest::{parse_indicator_registry, parse_panel_csv, parse_settings, FileRole, ParseError};
pub use model::{
    validate_panel, validate_registry, AggregationOrder, IndexConfig, IndicatorSpec,
    Normalization, Panel, Polarity, SectorId, SectorWeights, Severity, StdMode, Units,
    ValidationReport, Violation, WeightingMode,
};
pub use normalize::{
    apply_polarity, minmax, normalize_panel, normalize_panel_frozen, panel_stats, summary_stats,
    zscore, FrozenStats, NormalizeError, NormalizedPanel, SummaryStats,
};
