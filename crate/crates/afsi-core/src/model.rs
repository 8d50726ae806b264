//! Core domain types: sectors, indicator registry, configuration, panel data,
//! and the structural validation that every computation relies on.
//!
//! Parsing and validation are separate stages: the parsers in [`crate::ingest`]
//! accept anything structurally well-formed, and [`validate_registry`] /
//! [`validate_panel`] report semantic violations as data rather than errors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// Tolerance for every weight-sum rule (sector weights, within-sector weights,
/// flat weights).
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// The four sectors of the composite index. No user-defined sectors exist.
///
/// Canonical order is `RS, FS, ES, MS`; every fixed-order fold in the crate
/// (composite weights, reports) uses it so results are bit-reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectorId {
    /// Real sector (RS).
    Real,
    /// Fiscal sector (FS).
    Fiscal,
    /// External sector (ES).
    External,
    /// Financial and monetary sector (MS).
    Monetary,
}

impl SectorId {
    /// All sectors in canonical order.
    pub const ALL: [SectorId; 4] = [
        SectorId::Real,
        SectorId::Fiscal,
        SectorId::External,
        SectorId::Monetary,
    ];

    /// Two-letter code used in files and reports.
    pub fn code(self) -> &'static str {
        match self {
            SectorId::Real => "RS",
            SectorId::Fiscal => "FS",
            SectorId::External => "ES",
            SectorId::Monetary => "MS",
        }
    }

    /// Position in [`SectorId::ALL`].
    pub fn index(self) -> usize {
        match self {
            SectorId::Real => 0,
            SectorId::Fiscal => 1,
            SectorId::External => 2,
            SectorId::Monetary => 3,
        }
    }
}

impl fmt::Display for SectorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for SectorId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "RS" => Ok(SectorId::Real),
            "FS" => Ok(SectorId::Fiscal),
            "ES" => Ok(SectorId::External),
            "MS" => Ok(SectorId::Monetary),
            _ => Err(()),
        }
    }
}

/// Declared direction in which a higher raw value affects stability.
///
/// Polarity is part of the registry; nothing is inferred at compute time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Higher raw value improves stability.
    Positive,
    /// Higher raw value worsens stability.
    Negative,
}

impl Polarity {
    /// `+1.0` for positive, `-1.0` for negative.
    pub fn sign(self) -> f64 {
        match self {
            Polarity::Positive => 1.0,
            Polarity::Negative => -1.0,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        })
    }
}

impl FromStr for Polarity {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "positive" => Ok(Polarity::Positive),
            "negative" => Ok(Polarity::Negative),
            _ => Err(()),
        }
    }
}

/// Storage convention for an indicator's raw values. Metadata only; the
/// arithmetic never depends on it (z-scores are affine-invariant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Units {
    /// Ratio or rate stored as a decimal (`0.0652` means 6.52%).
    Fraction,
    /// Unbounded level (e.g. an exchange-rate index stored as `104.86`).
    IndexLevel,
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Units::Fraction => "fraction",
            Units::IndexLevel => "index_level",
        })
    }
}

impl FromStr for Units {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "fraction" => Ok(Units::Fraction),
            "index_level" => Ok(Units::IndexLevel),
            _ => Err(()),
        }
    }
}

/// One registered indicator.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSpec {
    /// Short unique token, e.g. `GDPG` or `PLR`.
    pub indicator_id: String,
    pub sector: SectorId,
    pub polarity: Polarity,
    /// Weight of this indicator within its weighting scheme; must be positive.
    /// In `sector` mode the weights of each sector sum to 1; in `flat` mode
    /// the weights of all indicators together sum to 1.
    pub within_weight: f64,
    pub units: Units,
    /// Human-readable name; may contain spaces but not commas.
    pub display_name: String,
}

/// How indicator weights are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WeightingMode {
    /// Within-sector weights sum to 1 per sector; the composite uses the
    /// configured sector weights.
    #[default]
    Sector,
    /// One flat weight per indicator summing to 1 across the registry; the
    /// composite's implied sector weight is the sum of the sector's weights.
    Flat,
}

/// Whether indicators are standardized before or after the weighted sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AggregationOrder {
    /// Standardize each indicator, then form weighted sums.
    #[default]
    NormalizeFirst,
    /// Form the weighted sum of polarity-signed raw values per sector, then
    /// z-score that single series.
    StandardizeAfter,
}

/// Per-indicator standardization scheme (used in `normalize_first` order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// `(x - mean) / std`.
    #[default]
    Zscore,
    /// `(x - min) / (max - min)`.
    Minmax,
}

/// Standard-deviation estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StdMode {
    /// Divide squared deviations by `n - 1`.
    #[default]
    Sample,
    /// Divide squared deviations by `n`.
    Population,
}

/// Composite weights for the four sectors, stored in canonical order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorWeights([f64; 4]);

impl SectorWeights {
    pub fn new(rs: f64, fs: f64, es: f64, ms: f64) -> Self {
        SectorWeights([rs, fs, es, ms])
    }

    pub fn get(&self, sector: SectorId) -> f64 {
        self.0[sector.index()]
    }

    pub fn set(&mut self, sector: SectorId, weight: f64) {
        self.0[sector.index()] = weight;
    }

    /// Sum in canonical order (RS, FS, ES, MS).
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl Default for SectorWeights {
    /// The composite's default weights: 0.15 RS, 0.15 FS, 0.30 ES, 0.40 MS.
    fn default() -> Self {
        SectorWeights([0.15, 0.15, 0.30, 0.40])
    }
}

/// Every methodological choice of the index construction, made explicit.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IndexConfig {
    pub sector_weights: SectorWeights,
    pub weighting_mode: WeightingMode,
    pub aggregation_order: AggregationOrder,
    pub normalization: Normalization,
    pub std_mode: StdMode,
}

/// Rectangular indicator-by-fiscal-year table of raw observations.
///
/// Construction is permissive; [`validate_panel`] enforces the structural
/// invariants (contiguous years, rectangular coverage, at least two years).
/// Fiscal years are plain integers; there is no calendar conversion.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Panel {
    cells: BTreeMap<String, BTreeMap<i32, f64>>,
}

impl Panel {
    pub fn new() -> Self {
        Panel::default()
    }

    /// Insert one observation. Returns `false` (and leaves the panel
    /// unchanged) if the cell is already present.
    pub fn insert(&mut self, indicator_id: &str, year: i32, value: f64) -> bool {
        let series = self.cells.entry(indicator_id.to_owned()).or_default();
        match series.entry(year) {
            std::collections::btree_map::Entry::Occupied(_) => false,
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(value);
                true
            }
        }
    }

    pub fn value(&self, indicator_id: &str, year: i32) -> Option<f64> {
        self.cells.get(indicator_id)?.get(&year).copied()
    }

    /// Sorted union of all years observed for any indicator.
    pub fn years(&self) -> Vec<i32> {
        let mut years: BTreeSet<i32> = BTreeSet::new();
        for series in self.cells.values() {
            years.extend(series.keys().copied());
        }
        years.into_iter().collect()
    }

    /// Indicator ids present in the panel, sorted.
    pub fn indicator_ids(&self) -> Vec<&str> {
        self.cells.keys().map(String::as_str).collect()
    }

    /// The indicator's values over the panel's full year axis, in year order.
    /// `None` if the indicator is absent or misses any year of the axis.
    pub fn series(&self, indicator_id: &str) -> Option<Vec<f64>> {
        let cells = self.cells.get(indicator_id)?;
        self.years()
            .iter()
            .map(|year| cells.get(year).copied())
            .collect()
    }

    /// Number of observations stored.
    pub fn cell_count(&self) -> usize {
        self.cells.values().map(BTreeMap::len).sum()
    }

    /// All observations as `(indicator_id, year, value)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, i32, f64)> + '_ {
        self.cells.iter().flat_map(|(id, series)| {
            series
                .iter()
                .map(move |(year, value)| (id.as_str(), *year, *value))
        })
    }

    /// Copy of the panel with `delta` added to one cell. `None` if the cell
    /// does not exist.
    pub fn with_delta(&self, indicator_id: &str, year: i32, delta: f64) -> Option<Panel> {
        let mut out = self.clone();
        let cell = out.cells.get_mut(indicator_id)?.get_mut(&year)?;
        *cell += delta;
        Some(out)
    }
}

/// How bad a [`Violation`] is. Errors block computation; warnings do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

/// One finding of the validation stage. Violations are data, not exceptions.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub severity: Severity,
    pub message: String,
}

/// Outcome of validating a registry or a panel.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// True when no error-severity violations exist (warnings are allowed).
    pub fn is_ok(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|v| v.severity == Severity::Error)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Warning)
    }

    fn error(&mut self, message: String) {
        self.violations.push(Violation {
            severity: Severity::Error,
            message,
        });
    }

    fn warning(&mut self, message: String) {
        self.violations.push(Violation {
            severity: Severity::Warning,
            message,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let tag = match v.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
            };
            write!(f, "{tag}: {msg}", msg = v.message)?;
        }
        Ok(())
    }
}

/// Check registry-level invariants: unique ids, positive weights, the active
/// weighting mode's weight-sum rule, and sector weights summing to 1.
pub fn validate_registry(registry: &[IndicatorSpec], config: &IndexConfig) -> ValidationReport {
    let mut report = ValidationReport::default();

    if registry.is_empty() {
        report.error("registry is empty".to_owned());
        return report;
    }

    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut duplicates: BTreeSet<&str> = BTreeSet::new();
    for spec in registry {
        if !seen.insert(&spec.indicator_id) {
            duplicates.insert(&spec.indicator_id);
        }
    }
    for id in duplicates {
        report.error(format!("duplicate indicator_id: {id}"));
    }

    for spec in registry {
        if !(spec.within_weight > 0.0) {
            report.error(format!(
                "non-positive within_weight for {id}: {w}",
                id = spec.indicator_id,
                w = spec.within_weight
            ));
        }
    }

    let sector_sum = config.sector_weights.sum();
    if !((sector_sum - 1.0).abs() <= WEIGHT_SUM_TOLERANCE) {
        report.error(format!("sector weights sum to {sector_sum} != 1"));
    }

    for sector in SectorId::ALL {
        if !registry.iter().any(|s| s.sector == sector) {
            report.error(format!("sector {sector} has no indicators"));
        }
    }

    match config.weighting_mode {
        WeightingMode::Sector => {
            for sector in SectorId::ALL {
                let members: Vec<&IndicatorSpec> =
                    registry.iter().filter(|s| s.sector == sector).collect();
                if members.is_empty() {
                    continue; // already reported above
                }
                let sum: f64 = members.iter().map(|s| s.within_weight).sum();
                if !((sum - 1.0).abs() <= WEIGHT_SUM_TOLERANCE) {
                    report.error(format!("within-weights of {sector} sum to {sum} != 1"));
                }
            }
        }
        WeightingMode::Flat => {
            let sum: f64 = registry.iter().map(|s| s.within_weight).sum();
            if !((sum - 1.0).abs() <= WEIGHT_SUM_TOLERANCE) {
                report.error(format!(
                    "within-weights across all indicators sum to {sum} != 1"
                ));
            }
        }
    }

    report
}

/// Check panel-level invariants against a registry: at least two contiguous
/// years, full rectangular coverage, no unknown indicators. Zero-dispersion
/// series are reported as warnings (they become hard errors only when a
/// z-score is actually required).
pub fn validate_panel(panel: &Panel, registry: &[IndicatorSpec]) -> ValidationReport {
    let mut report = ValidationReport::default();

    let years = panel.years();
    if years.len() < 2 {
        report.error(format!(
            "panel has {n} year(s); at least 2 required",
            n = years.len()
        ));
    }
    for pair in years.windows(2) {
        if pair[1] != pair[0] + 1 {
            report.error(format!("year gap after {}", pair[0]));
        }
    }

    let registered: BTreeSet<&str> = registry.iter().map(|s| s.indicator_id.as_str()).collect();

    for id in panel.indicator_ids() {
        if !registered.contains(id) {
            report.error(format!("unknown indicator in panel: {id}"));
        }
    }

    for id in &registered {
        let Some(cells) = panel.cells.get(*id) else {
            report.error(format!("indicator {id} missing from panel"));
            continue;
        };
        for year in &years {
            if !cells.contains_key(year) {
                report.error(format!("missing cell: {id} {year}"));
            }
        }
        if cells.len() >= 2 {
            let mut values = cells.values();
            let first = *values.next().expect("non-empty");
            if values.all(|v| *v == first) {
                report.warning(format!("zero dispersion: {id}"));
            }
        }
    }

    report
}
