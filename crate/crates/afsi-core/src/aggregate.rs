//! Sector sub-indices and the composite index.
//!
//! Summation order is fixed everywhere: indicators in sorted-id order within
//! a sector, sectors in canonical RS, FS, ES, MS order. Identical inputs
//! produce bit-identical outputs regardless of registry or panel row order.

use crate::error::Error;
use crate::model::{
    AggregationOrder, IndexConfig, IndicatorSpec, Panel, SectorId, WeightingMode,
    validate_panel, validate_registry,
};
use crate::normalize::{normalize_panel, summary_stats, zscore, NormalizedPanel};

/// Per-year values of one sector's sub-index, on the panel's year axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorIndexSeries {
    pub sector: SectorId,
    pub years: Vec<i32>,
    pub values: Vec<f64>,
}

/// The composite series together with its four constituents.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityIndexSeries {
    pub years: Vec<i32>,
    /// Sub-indices in canonical sector order (RS, FS, ES, MS).
    pub sectors: [SectorIndexSeries; 4],
    pub afsi: Vec<f64>,
}

impl StabilityIndexSeries {
    pub fn sector(&self, id: SectorId) -> &SectorIndexSeries {
        &self.sectors[id.index()]
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AggregateError {
    #[error("indicator {indicator} missing from normalized panel")]
    MissingIndicator { indicator: String },
    #[error("sector {0} has no indicators")]
    EmptySector(SectorId),
    #[error("sector {0} not present exactly once among sub-indices")]
    MissingSector(SectorId),
    #[error("year axis mismatch between sub-index series")]
    AxisMismatch,
    #[error("zero dispersion in weighted sum for sector {0}")]
    ZeroDispersionSum(SectorId),
}

/// The sector's members in fixed summation order with their effective
/// sub-index weights: the registry weight in sector mode, the flat weight
/// rescaled to sum to 1 within the sector in flat mode.
fn sector_members<'a>(
    sector: SectorId,
    registry: &'a [IndicatorSpec],
    mode: WeightingMode,
) -> Result<Vec<(&'a IndicatorSpec, f64)>, AggregateError> {
    let mut members: Vec<&IndicatorSpec> =
        registry.iter().filter(|s| s.sector == sector).collect();
    members.sort_by(|a, b| a.indicator_id.cmp(&b.indicator_id));
    members.dedup_by(|a, b| a.indicator_id == b.indicator_id);
    if members.is_empty() {
        return Err(AggregateError::EmptySector(sector));
    }
    let weights: Vec<f64> = match mode {
        WeightingMode::Sector => members.iter().map(|s| s.within_weight).collect(),
        WeightingMode::Flat => {
            let total: f64 = members.iter().map(|s| s.within_weight).sum();
            members.iter().map(|s| s.within_weight / total).collect()
        }
    };
    Ok(members.into_iter().zip(weights).collect())
}

/// Flat mode's implied composite weight for a sector: the sum of its
/// indicators' flat weights.
fn implied_sector_weight(sector: SectorId, registry: &[IndicatorSpec]) -> f64 {
    let mut weights: Vec<(&str, f64)> = registry
        .iter()
        .filter(|s| s.sector == sector)
        .map(|s| (s.indicator_id.as_str(), s.within_weight))
        .collect();
    weights.sort_by(|a, b| a.0.cmp(b.0));
    weights.dedup_by(|a, b| a.0 == b.0);
    weights.iter().map(|(_, w)| w).sum()
}

/// One sector's sub-index.
///
/// Under `normalize_first` this is the weighted sum of the standardized,
/// polarity-adjusted columns. Under `standardize_after` the weighted sum of
/// the polarity-signed raw columns is formed first and that single series is
/// z-scored over the sample with the configured `std_mode`.
pub fn sub_index(
    sector: SectorId,
    normalized: &NormalizedPanel,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
) -> Result<SectorIndexSeries, AggregateError> {
    let members = sector_members(sector, registry, config.weighting_mode)?;
    let years = normalized.years().to_vec();
    let mut values = vec![0.0; years.len()];
    for (spec, weight) in &members {
        let column = normalized.column(&spec.indicator_id).ok_or_else(|| {
            AggregateError::MissingIndicator {
                indicator: spec.indicator_id.clone(),
            }
        })?;
        if column.len() != values.len() {
            return Err(AggregateError::AxisMismatch);
        }
        for (acc, v) in values.iter_mut().zip(column) {
            *acc += weight * v;
        }
    }

    if config.aggregation_order == AggregationOrder::StandardizeAfter {
        let stats = summary_stats(sector.code(), &values, config.std_mode)
            .map_err(|_| AggregateError::ZeroDispersionSum(sector))?;
        values = zscore(&values, &stats)
            .map_err(|_| AggregateError::ZeroDispersionSum(sector))?;
    }

    Ok(SectorIndexSeries {
        sector,
        years,
        values,
    })
}

/// Combine the four sub-indices into the composite series.
///
/// Sector mode uses the configured sector weights; flat mode uses each
/// sector's implied weight (the sum of its flat indicator weights), which
/// makes the composite equal the flat weighted sum over all indicators.
pub fn composite_afsi(
    sub_indices: [SectorIndexSeries; 4],
    registry: &[IndicatorSpec],
    config: &IndexConfig,
) -> Result<StabilityIndexSeries, AggregateError> {
    let mut slots: [Option<SectorIndexSeries>; 4] = [None, None, None, None];
    for series in sub_indices {
        let slot = &mut slots[series.sector.index()];
        if slot.is_some() {
            return Err(AggregateError::MissingSector(series.sector));
        }
        *slot = Some(series);
    }
    let sectors = SectorId::ALL.map(|id| {
        slots[id.index()]
            .take()
            .ok_or(AggregateError::MissingSector(id))
    });
    let mut ordered = Vec::with_capacity(4);
    for sector in sectors {
        ordered.push(sector?);
    }
    let sectors: [SectorIndexSeries; 4] = ordered.try_into().expect("exactly four sectors");

    let years = sectors[0].years.clone();
    if sectors.iter().any(|s| s.years != years) {
        return Err(AggregateError::AxisMismatch);
    }

    let mut afsi = vec![0.0; years.len()];
    for series in &sectors {
        let weight = match config.weighting_mode {
            WeightingMode::Sector => config.sector_weights.get(series.sector),
            WeightingMode::Flat => implied_sector_weight(series.sector, registry),
        };
        for (acc, v) in afsi.iter_mut().zip(&series.values) {
            *acc += weight * v;
        }
    }

    Ok(StabilityIndexSeries {
        years,
        sectors,
        afsi,
    })
}

/// The full pipeline: validate, normalize, form the four sub-indices, and
/// combine them. Fails fast with the first stage's error, unmodified.
pub fn run_pipeline(
    panel: &Panel,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
) -> Result<StabilityIndexSeries, Error> {
    let registry_report = validate_registry(registry, config);
    if !registry_report.is_ok() {
        return Err(Error::Validation(registry_report));
    }
    let panel_report = validate_panel(panel, registry);
    if !panel_report.is_ok() {
        return Err(Error::Validation(panel_report));
    }
    let normalized = normalize_panel(panel, registry, config)?;
    aggregate_normalized(&normalized, registry, config).map_err(Error::from)
}

/// Sub-indices plus composite from an already normalized panel. Shared by
/// [`run_pipeline`] and the frozen-stats recompute path of the what-if
/// analysis.
pub fn aggregate_normalized(
    normalized: &NormalizedPanel,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
) -> Result<StabilityIndexSeries, AggregateError> {
    let sub_indices = [
        sub_index(SectorId::Real, normalized, registry, config)?,
        sub_index(SectorId::Fiscal, normalized, registry, config)?,
        sub_index(SectorId::External, normalized, registry, config)?,
        sub_index(SectorId::Monetary, normalized, registry, config)?,
    ];
    composite_afsi(sub_indices, registry, config)
}
