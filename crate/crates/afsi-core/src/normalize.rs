//! Summary statistics and the per-indicator standardization stage.
//!
//! Standardization always uses the full sample window: adding a year changes
//! every normalized value. Within a series the summation order is fixed
//! (ascending years), so results are bit-reproducible across runs.

use std::collections::BTreeMap;

use crate::model::{
    AggregationOrder, IndexConfig, IndicatorSpec, Normalization, Panel, Polarity, StdMode,
};

/// Mean and standard deviation of one indicator over the sample window.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub indicator_id: String,
    pub mean: f64,
    pub std: f64,
    /// Observation count; at least 2.
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NormalizeError {
    #[error("{indicator}: {n} observation(s); at least 2 required")]
    TooFewObservations { indicator: String, n: usize },
    #[error("zero dispersion: {indicator}")]
    ZeroDispersion { indicator: String },
}

/// Mean plus sample or population standard deviation of a series.
///
/// A series whose values are all identical gets `std = 0` exactly (the
/// two-pass formula is skipped so float noise cannot produce a spurious
/// nonzero dispersion).
pub fn summary_stats(
    indicator_id: &str,
    series: &[f64],
    mode: StdMode,
) -> Result<SummaryStats, NormalizeError> {
    let n = series.len();
    if n < 2 {
        return Err(NormalizeError::TooFewObservations {
            indicator: indicator_id.to_owned(),
            n,
        });
    }
    let first = series[0];
    if series.iter().all(|v| *v == first) {
        return Ok(SummaryStats {
            indicator_id: indicator_id.to_owned(),
            mean: first,
            std: 0.0,
            n,
        });
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let sum_sq: f64 = series.iter().map(|v| (v - mean) * (v - mean)).sum();
    let divisor = match mode {
        StdMode::Sample => (n - 1) as f64,
        StdMode::Population => n as f64,
    };
    Ok(SummaryStats {
        indicator_id: indicator_id.to_owned(),
        mean,
        std: (sum_sq / divisor).sqrt(),
        n,
    })
}

/// `(v - mean) / std` for every value. Errors when `stats.std` is zero.
pub fn zscore(series: &[f64], stats: &SummaryStats) -> Result<Vec<f64>, NormalizeError> {
    if stats.std == 0.0 {
        return Err(NormalizeError::ZeroDispersion {
            indicator: stats.indicator_id.clone(),
        });
    }
    Ok(series.iter().map(|v| (v - stats.mean) / stats.std).collect())
}

/// `(v - min) / (max - min)` for every value. Errors when `max == min`.
pub fn minmax(indicator_id: &str, series: &[f64]) -> Result<Vec<f64>, NormalizeError> {
    let (min, max) = min_max(indicator_id, series)?;
    minmax_with(indicator_id, series, min, max)
}

fn minmax_with(
    indicator_id: &str,
    series: &[f64],
    min: f64,
    max: f64,
) -> Result<Vec<f64>, NormalizeError> {
    if !(max > min) {
        return Err(NormalizeError::ZeroDispersion {
            indicator: indicator_id.to_owned(),
        });
    }
    Ok(series.iter().map(|v| (v - min) / (max - min)).collect())
}

fn min_max(indicator_id: &str, series: &[f64]) -> Result<(f64, f64), NormalizeError> {
    if series.len() < 2 {
        return Err(NormalizeError::TooFewObservations {
            indicator: indicator_id.to_owned(),
            n: series.len(),
        });
    }
    let min = series.iter().copied().fold(f64::INFINITY, f64::min);
    let max = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((min, max))
}

/// Adjust a standardized series for the indicator's declared polarity.
///
/// Positive polarity is the identity. Negative polarity negates z-scores and
/// reflects min-max values (`v -> 1 - v`) so that "higher output" always
/// means "more stable".
pub fn apply_polarity(series: &[f64], polarity: Polarity, scheme: Normalization) -> Vec<f64> {
    match polarity {
        Polarity::Positive => series.to_vec(),
        Polarity::Negative => match scheme {
            Normalization::Zscore => series.iter().map(|v| -v).collect(),
            Normalization::Minmax => series.iter().map(|v| 1.0 - v).collect(),
        },
    }
}

/// Baseline statistics of every registered indicator, frozen so that a
/// perturbed panel can be re-normalized against the original sample.
#[derive(Debug, Clone, PartialEq)]
pub enum FrozenStats {
    Zscore(BTreeMap<String, SummaryStats>),
    /// Per-indicator `(min, max)`.
    Minmax(BTreeMap<String, (f64, f64)>),
}

impl FrozenStats {
    /// Capture the statistics the configured normalization scheme needs.
    /// Zero-dispersion series are allowed here; they fail only when a
    /// standardization is actually applied.
    pub fn freeze(
        panel: &Panel,
        registry: &[IndicatorSpec],
        config: &IndexConfig,
    ) -> Result<FrozenStats, NormalizeError> {
        match config.normalization {
            Normalization::Zscore => {
                let stats = panel_stats(panel, registry, config.std_mode)?;
                Ok(FrozenStats::Zscore(
                    stats.into_iter().map(|s| (s.indicator_id.clone(), s)).collect(),
                ))
            }
            Normalization::Minmax => {
                let mut map = BTreeMap::new();
                for id in registered_ids(registry) {
                    let series = series_of(panel, id)?;
                    map.insert(id.to_owned(), min_max(id, &series)?);
                }
                Ok(FrozenStats::Minmax(map))
            }
        }
    }

    /// The dispersion that scales a raw change into a normalized change:
    /// the standard deviation under z-score, `max - min` under min-max.
    pub fn dispersion(&self, indicator_id: &str) -> Option<f64> {
        match self {
            FrozenStats::Zscore(map) => map.get(indicator_id).map(|s| s.std),
            FrozenStats::Minmax(map) => map.get(indicator_id).map(|(min, max)| max - min),
        }
    }
}

/// Per-indicator columns after the first pipeline stage, aligned on the
/// panel's year axis.
///
/// Under `normalize_first` each column is standardized over the full sample
/// and polarity-adjusted; under `zscore` + the configured `std_mode` every
/// column then has mean 0 and std 1, and under `minmax` it lies in [0, 1]
/// with both endpoints attained. Under `standardize_after` the columns are
/// raw values with the polarity sign applied; the standardization happens on
/// each sector's weighted sum in [`crate::aggregate::sub_index`].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPanel {
    years: Vec<i32>,
    columns: BTreeMap<String, Vec<f64>>,
}

impl NormalizedPanel {
    pub fn years(&self) -> &[i32] {
        &self.years
    }

    pub fn column(&self, indicator_id: &str) -> Option<&[f64]> {
        self.columns.get(indicator_id).map(Vec::as_slice)
    }

    pub fn indicator_ids(&self) -> Vec<&str> {
        self.columns.keys().map(String::as_str).collect()
    }
}

/// Registry ids deduplicated and in canonical (sorted) order, paired with
/// their specs. On duplicate ids the last spec wins; a valid registry has
/// no duplicates.
fn canonical_specs(registry: &[IndicatorSpec]) -> BTreeMap<&str, &IndicatorSpec> {
    registry
        .iter()
        .map(|spec| (spec.indicator_id.as_str(), spec))
        .collect()
}

fn registered_ids(registry: &[IndicatorSpec]) -> Vec<&str> {
    canonical_specs(registry).into_keys().collect()
}

fn series_of(panel: &Panel, indicator_id: &str) -> Result<Vec<f64>, NormalizeError> {
    panel
        .series(indicator_id)
        .ok_or_else(|| NormalizeError::TooFewObservations {
            indicator: indicator_id.to_owned(),
            n: 0,
        })
}

/// Summary statistics for every registered indicator, sorted by id.
pub fn panel_stats(
    panel: &Panel,
    registry: &[IndicatorSpec],
    mode: StdMode,
) -> Result<Vec<SummaryStats>, NormalizeError> {
    registered_ids(registry)
        .into_iter()
        .map(|id| summary_stats(id, &series_of(panel, id)?, mode))
        .collect()
}

/// First pipeline stage: standardize (or polarity-sign) every registered
/// indicator over the full sample window. See [`NormalizedPanel`] for what
/// the columns hold under each aggregation order.
pub fn normalize_panel(
    panel: &Panel,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
) -> Result<NormalizedPanel, NormalizeError> {
    match config.aggregation_order {
        AggregationOrder::NormalizeFirst => {
            let frozen = FrozenStats::freeze(panel, registry, config)?;
            normalize_panel_frozen(panel, registry, config, &frozen)
        }
        AggregationOrder::StandardizeAfter => {
            let mut columns = BTreeMap::new();
            for (id, spec) in canonical_specs(registry) {
                let series = series_of(panel, id)?;
                let sign = spec.polarity.sign();
                columns.insert(id.to_owned(), series.iter().map(|v| sign * v).collect());
            }
            Ok(NormalizedPanel {
                years: panel.years(),
                columns,
            })
        }
    }
}

/// Like [`normalize_panel`] under `normalize_first`, but standardizing
/// against previously frozen statistics instead of the panel's own. This is
/// the recompute path of the what-if analysis; perturbed values may fall
/// outside the frozen min-max range.
pub fn normalize_panel_frozen(
    panel: &Panel,
    registry: &[IndicatorSpec],
    config: &IndexConfig,
    frozen: &FrozenStats,
) -> Result<NormalizedPanel, NormalizeError> {
    let mut columns = BTreeMap::new();
    for (id, spec) in canonical_specs(registry) {
        let series = series_of(panel, id)?;
        let standardized = match frozen {
            FrozenStats::Zscore(map) => {
                let stats = map.get(id).ok_or_else(|| NormalizeError::TooFewObservations {
                    indicator: id.to_owned(),
                    n: 0,
                })?;
                zscore(&series, stats)?
            }
            FrozenStats::Minmax(map) => {
                let (min, max) = map.get(id).copied().ok_or_else(|| {
                    NormalizeError::TooFewObservations {
                        indicator: id.to_owned(),
                        n: 0,
                    }
                })?;
                minmax_with(id, &series, min, max)?
            }
        };
        columns.insert(
            id.to_owned(),
            apply_polarity(&standardized, spec.polarity, config.normalization),
        );
    }
    Ok(NormalizedPanel {
        years: panel.years(),
        columns,
    })
}
