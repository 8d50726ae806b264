//! Diagnostics on a computed index: frozen-stats what-if perturbations,
//! sensitivity ranking, year-over-year direction, and threshold warning
//! flags.
//!
//! What-ifs freeze every indicator's normalization statistics at their
//! baseline values, so a perturbation moves only the perturbed cell's
//! normalized value and the marginal effect has a closed form. Under
//! `standardize_after` there is no per-indicator statistic to freeze; the
//! perturbed panel is simply recomputed, which refreshes the summed series'
//! own statistics, and no closed form is reported.

use crate::aggregate::{aggregate_normalized, run_pipeline, StabilityIndexSeries};
use crate::error::Error;
use crate::model::{
    AggregationOrder, IndexConfig, IndicatorSpec, Panel, SectorId, StdMode, WeightingMode,
    validate_panel, validate_registry,
};
use crate::normalize::{normalize_panel_frozen, summary_stats, FrozenStats};

/// Default watch threshold multiplier: flag below `mean - 1.0 * std`.
pub const DEFAULT_WATCH_K: f64 = 1.0;
/// Default alert threshold multiplier: flag below `mean - 1.5 * std`.
pub const DEFAULT_ALERT_K: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("unknown indicator: {0}")]
    UnknownIndicator(String),
    #[error("unknown fiscal year: {0}")]
    UnknownYear(i32),
    #[error("sensitivity ranking requires aggregation_order=normalize_first")]
    RequiresNormalizeFirst,
}

/// Effect of perturbing one raw observation, with normalization statistics
/// frozen at their baseline values.
#[derive(Debug, Clone, PartialEq)]
pub struct WhatIfResult {
    pub indicator_id: String,
    pub sector: SectorId,
    pub year: i32,
    /// Raw-unit perturbation applied to the cell.
    pub delta: f64,
    /// Recomputed change of the sector's sub-index at `year`.
    pub delta_sub_index: f64,
    /// Recomputed change of the composite at `year`.
    pub delta_afsi: f64,
    /// Closed-form predictions; `None` under `standardize_after`, where the
    /// summed series' statistics refresh and no closed form exists.
    pub predicted_delta_sub_index: Option<f64>,
    pub predicted_delta_afsi: Option<f64>,
}

/// One indicator's frozen-stats derivative of the composite.
#[derive(Debug, Clone, PartialEq)]
pub struct Sensitivity {
    pub indicator_id: String,
    /// Change of the composite per one raw-unit increase of the indicator.
    pub afsi_per_unit: f64,
}

/// Sign of a year-over-year change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
    Flat,
}

impl Direction {
    fn of(change: f64) -> Direction {
        if change > 0.0 {
            Direction::Up
        } else if change < 0.0 {
            Direction::Down
        } else {
            Direction::Flat
        }
    }

    /// `+`, `-` or `0`.
    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Up => "+",
            Direction::Down => "-",
            Direction::Flat => "0",
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Directions of all five series for one consecutive year pair.
#[derive(Debug, Clone, PartialEq)]
pub struct YoyDirection {
    /// The later year of the pair.
    pub year: i32,
    /// Per-sector directions in canonical order (RS, FS, ES, MS).
    pub sectors: [Direction; 4],
    pub afsi: Direction,
}

impl YoyDirection {
    pub fn sector(&self, id: SectorId) -> Direction {
        self.sectors[id.index()]
    }
}

/// Threshold severity of a [`WarningFlag`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FlagSeverity {
    Watch,
    Alert,
}

impl std::fmt::Display for FlagSeverity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FlagSeverity::Watch => "watch",
            FlagSeverity::Alert => "alert",
        })
    }
}

/// A year in which a series breached its own history-based threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct WarningFlag {
    /// `RS`, `FS`, `ES`, `MS` or `AFSI`.
    pub series_label: String,
    pub year: i32,
    pub severity: FlagSeverity,
    pub trigger: String,
}

fn ensure_valid(
    panel: &Panel,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
) -> Result<(), Error> {
    let registry_report = validate_registry(registry, config);
    if !registry_report.is_ok() {
        return Err(Error::Validation(registry_report));
    }
    let panel_report = validate_panel(panel, registry);
    if !panel_report.is_ok() {
        return Err(Error::Validation(panel_report));
    }
    Ok(())
}

fn find_spec<'a>(
    registry: &'a [IndicatorSpec],
    indicator_id: &str,
) -> Result<&'a IndicatorSpec, AnalysisError> {
    registry
        .iter()
        .find(|s| s.indicator_id == indicator_id)
        .ok_or_else(|| AnalysisError::UnknownIndicator(indicator_id.to_owned()))
}

/// The indicator's weight in its sub-index and in the composite under the
/// given mode. Used by the closed forms of `whatif` and `sensitivity_rank`.
fn effective_weights(
    spec: &IndicatorSpec,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
) -> (f64, f64) {
    match config.weighting_mode {
        WeightingMode::Sector => {
            let sub = spec.within_weight;
            (sub, config.sector_weights.get(spec.sector) * sub)
        }
        WeightingMode::Flat => {
            let total: f64 = registry
                .iter()
                .filter(|s| s.sector == spec.sector)
                .map(|s| s.within_weight)
                .sum();
            (spec.within_weight / total, spec.within_weight)
        }
    }
}

/// Perturb one cell by `delta` and report the change of the sector sub-index
/// and the composite at that year, next to the closed-form prediction
/// `weight * polarity_sign * delta / dispersion`.
pub fn whatif(
    panel: &Panel,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
    indicator_id: &str,
    year: i32,
    delta: f64,
) -> Result<WhatIfResult, Error> {
    ensure_valid(panel, registry, config)?;
    let spec = find_spec(registry, indicator_id)?;
    let years = panel.years();
    let year_pos = years
        .iter()
        .position(|y| *y == year)
        .ok_or(AnalysisError::UnknownYear(year))?;
    let perturbed = panel
        .with_delta(indicator_id, year, delta)
        .ok_or_else(|| AnalysisError::UnknownIndicator(indicator_id.to_owned()))?;

    let (base, recomputed, predicted) = match config.aggregation_order {
        AggregationOrder::NormalizeFirst => {
            let frozen = FrozenStats::freeze(panel, registry, config)?;
            let base_normalized = normalize_panel_frozen(panel, registry, config, &frozen)?;
            let base = aggregate_normalized(&base_normalized, registry, config)?;
            let perturbed_normalized =
                normalize_panel_frozen(&perturbed, registry, config, &frozen)?;
            let recomputed = aggregate_normalized(&perturbed_normalized, registry, config)?;

            let dispersion = frozen
                .dispersion(indicator_id)
                .expect("frozen stats cover every registered indicator");
            let (sub_weight, afsi_weight) = effective_weights(spec, registry, config);
            let normalized_delta = spec.polarity.sign() * delta / dispersion;
            let predicted = Some((sub_weight * normalized_delta, afsi_weight * normalized_delta));
            (base, recomputed, predicted)
        }
        AggregationOrder::StandardizeAfter => {
            let base = run_pipeline(panel, registry, config)?;
            let recomputed = run_pipeline(&perturbed, registry, config)?;
            (base, recomputed, None)
        }
    };

    let sector = spec.sector;
    let delta_sub_index =
        recomputed.sector(sector).values[year_pos] - base.sector(sector).values[year_pos];
    let delta_afsi = recomputed.afsi[year_pos] - base.afsi[year_pos];

    Ok(WhatIfResult {
        indicator_id: indicator_id.to_owned(),
        sector,
        year,
        delta,
        delta_sub_index,
        delta_afsi,
        predicted_delta_sub_index: predicted.map(|(sub, _)| sub),
        predicted_delta_afsi: predicted.map(|(_, afsi)| afsi),
    })
}

/// Frozen-stats derivative of the composite with respect to each indicator,
/// sorted by absolute magnitude descending, ties broken by id ascending.
/// Requires `normalize_first`; the derivative is the same at every year, the
/// `year` argument is validated for existence only.
///
/// The ranking is computed straight from the registry weights; it is
/// homogeneous in each `within_weight` and does not re-check weight sums.
pub fn sensitivity_rank(
    panel: &Panel,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
    year: i32,
) -> Result<Vec<Sensitivity>, Error> {
    if config.aggregation_order != AggregationOrder::NormalizeFirst {
        return Err(AnalysisError::RequiresNormalizeFirst.into());
    }
    if !panel.years().contains(&year) {
        return Err(AnalysisError::UnknownYear(year).into());
    }

    let frozen = FrozenStats::freeze(panel, registry, config)?;
    let mut entries = Vec::new();
    for spec in registry {
        let dispersion = frozen
            .dispersion(&spec.indicator_id)
            .expect("frozen stats cover every registered indicator");
        if dispersion == 0.0 {
            return Err(crate::normalize::NormalizeError::ZeroDispersion {
                indicator: spec.indicator_id.clone(),
            }
            .into());
        }
        let (_, afsi_weight) = effective_weights(spec, registry, config);
        entries.push(Sensitivity {
            indicator_id: spec.indicator_id.clone(),
            afsi_per_unit: afsi_weight * spec.polarity.sign() / dispersion,
        });
    }
    entries.sort_by(|a, b| {
        b.afsi_per_unit
            .abs()
            .partial_cmp(&a.afsi_per_unit.abs())
            .expect("finite sensitivities")
            .then_with(|| a.indicator_id.cmp(&b.indicator_id))
    });
    Ok(entries)
}

/// Sign of the change of every series for each consecutive year pair.
pub fn yoy_direction(series: &StabilityIndexSeries) -> Vec<YoyDirection> {
    let mut out = Vec::new();
    for t in 1..series.years.len() {
        out.push(YoyDirection {
            year: series.years[t],
            sectors: SectorId::ALL.map(|id| {
                let values = &series.sector(id).values;
                Direction::of(values[t] - values[t - 1])
            }),
            afsi: Direction::of(series.afsi[t] - series.afsi[t - 1]),
        });
    }
    out
}

/// Flag years in which a series falls below its own full-sample
/// `mean - k * std` threshold. One flag per breach year, at the highest
/// severity reached. Series with fewer than 3 years or zero dispersion
/// produce no flags.
pub fn warning_flags(
    series: &StabilityIndexSeries,
    std_mode: StdMode,
    watch_k: f64,
    alert_k: f64,
) -> Vec<WarningFlag> {
    let mut flags = Vec::new();
    if series.years.len() < 3 {
        return flags;
    }

    let mut labeled: Vec<(&str, &[f64])> = Vec::with_capacity(5);
    for id in SectorId::ALL {
        labeled.push((id.code(), &series.sector(id).values));
    }
    labeled.push(("AFSI", &series.afsi));

    for (label, values) in labeled {
        let Ok(stats) = summary_stats(label, values, std_mode) else {
            continue;
        };
        if stats.std == 0.0 {
            continue;
        }
        let watch_line = stats.mean - watch_k * stats.std;
        let alert_line = stats.mean - alert_k * stats.std;
        for (year, value) in series.years.iter().zip(values) {
            let severity = if *value < alert_line {
                Some((FlagSeverity::Alert, alert_k, alert_line))
            } else if *value < watch_line {
                Some((FlagSeverity::Watch, watch_k, watch_line))
            } else {
                None
            };
            if let Some((severity, k, line)) = severity {
                flags.push(WarningFlag {
                    series_label: label.to_owned(),
                    year: *year,
                    severity,
                    trigger: format!(
                        "{label} {year} = {value:.4} < mean - {k}*std = {line:.4}"
                    ),
                });
            }
        }
    }
    flags
}
