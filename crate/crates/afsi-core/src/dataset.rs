//! Built-in synthetic reference dataset: 19 macro-financial indicators over
//! fiscal years 2016-2024.
//!
//! Every series is a fixed nine-point shape rescaled so that its sample mean
//! and standard deviation hit the indicator's calibration target exactly.
//! The shapes encode a coherent final-year story: monetary stress (falling
//! performing-loan ratio, capital adequacy, returns; spiking call money
//! rate), external weakness, and mild real and fiscal improvement. All
//! values are synthetic.

use crate::model::{IndicatorSpec, Panel, Polarity, SectorId, Units};

pub const FIRST_YEAR: i32 = 2016;
pub const LAST_YEAR: i32 = 2024;
const YEAR_COUNT: usize = (LAST_YEAR - FIRST_YEAR + 1) as usize;

pub fn reference_years() -> Vec<i32> {
    (FIRST_YEAR..=LAST_YEAR).collect()
}

struct ReferenceIndicator {
    id: &'static str,
    sector: SectorId,
    polarity: Polarity,
    units: Units,
    display_name: &'static str,
    /// Target sample mean and standard deviation of the emitted series.
    mean: f64,
    std: f64,
    /// Raw shape; only its z-profile survives the rescale.
    shape: [f64; YEAR_COUNT],
}

use Polarity::{Negative, Positive};
use SectorId::{External, Fiscal, Monetary, Real};
use Units::{Fraction, IndexLevel};

#[rustfmt::skip]
const REFERENCE_INDICATORS: [ReferenceIndicator; 19] = [
    // Real sector
    ReferenceIndicator { id: "GDPG", sector: Real, polarity: Positive, units: Fraction,
        display_name: "GDP Growth Rate", mean: 0.0652, std: 0.0131,
        shape: [0.0711, 0.0728, 0.0786, 0.0815, 0.0345, 0.0694, 0.0710, 0.0578, 0.0582] },
    ReferenceIndicator { id: "AP", sector: Real, polarity: Positive, units: Fraction,
        display_name: "Agricultural Production", mean: 0.0297, std: 0.0321,
        shape: [0.028, 0.030, 0.042, 0.039, 0.031, 0.033, 0.021, 0.026, 0.062] },
    ReferenceIndicator { id: "QIIP", sector: Real, polarity: Positive, units: Fraction,
        display_name: "Quantum Index of Industrial Production", mean: 0.0857, std: 0.0567,
        shape: [0.089, 0.102, 0.131, 0.094, 0.038, 0.118, 0.067, 0.041, 0.029] },
    ReferenceIndicator { id: "INFL", sector: Real, polarity: Negative, units: Fraction,
        display_name: "Inflation", mean: 0.0680, std: 0.0178,
        shape: [0.059, 0.057, 0.055, 0.055, 0.056, 0.055, 0.062, 0.090, 0.097] },
    ReferenceIndicator { id: "DCGDP", sector: Real, polarity: Positive, units: Fraction,
        display_name: "Domestic Credit to GDP", mean: 0.4038, std: 0.0177,
        shape: [0.390, 0.400, 0.410, 0.415, 0.420, 0.425, 0.420, 0.410, 0.405] },
    // Fiscal sector
    ReferenceIndicator { id: "FBGDP", sector: Fiscal, polarity: Positive, units: Fraction,
        display_name: "Fiscal Balance to GDP", mean: -0.0454, std: 0.0049,
        shape: [-0.048, -0.047, -0.051, -0.053, -0.052, -0.048, -0.046, -0.044, -0.039] },
    ReferenceIndicator { id: "GDGDP", sector: Fiscal, polarity: Negative, units: Fraction,
        display_name: "Government Debt to GDP", mean: 0.1893, std: 0.0405,
        shape: [0.14, 0.15, 0.16, 0.17, 0.19, 0.21, 0.22, 0.24, 0.26] },
    ReferenceIndicator { id: "TRGDP", sector: Fiscal, polarity: Positive, units: Fraction,
        display_name: "Tax Revenue to GDP", mean: 0.0745, std: 0.0027,
        shape: [0.0738, 0.0729, 0.0716, 0.0724, 0.0731, 0.0745, 0.0752, 0.0768, 0.0791] },
    // External sector
    ReferenceIndicator { id: "EDGDP", sector: External, polarity: Negative, units: Fraction,
        display_name: "External Debt to GDP", mean: 0.1944, std: 0.0317,
        shape: [0.155, 0.161, 0.172, 0.181, 0.195, 0.211, 0.224, 0.238, 0.251] },
    ReferenceIndicator { id: "RED", sector: External, polarity: Positive, units: Fraction,
        display_name: "Reserve to External Debt", mean: 0.5212, std: 0.1647,
        shape: [0.78, 0.74, 0.69, 0.66, 0.71, 0.58, 0.41, 0.28, 0.1907] },
    ReferenceIndicator { id: "CABGDP", sector: External, polarity: Positive, units: Fraction,
        display_name: "Current Account Balance to GDP", mean: -0.0124, std: 0.0149,
        shape: [0.019, 0.005, -0.021, -0.013, -0.009, -0.028, -0.033, -0.011, -0.026] },
    ReferenceIndicator { id: "REER", sector: External, polarity: Negative, units: IndexLevel,
        display_name: "Real Effective Exchange Rate", mean: 104.8600, std: 5.4134,
        shape: [112.4, 110.9, 108.7, 107.2, 105.8, 104.1, 101.9, 99.6, 97.3] },
    // NIIP levels are kept as given (mean near -1.33) rather than rescaled to
    // a percent convention; polarity positive, a deeper deficit reads as
    // deterioration.
    ReferenceIndicator { id: "NIIP", sector: External, polarity: Positive, units: Fraction,
        display_name: "Net International Investment Position to GDP", mean: -1.3347, std: 0.4508,
        shape: [-0.71, -0.83, -0.97, -1.08, -1.21, -1.39, -1.58, -1.79, -1.94] },
    // Financial and monetary sector
    ReferenceIndicator { id: "DCG", sector: Monetary, polarity: Positive, units: Fraction,
        display_name: "Domestic Credit Growth", mean: 0.1307, std: 0.0231,
        shape: [0.153, 0.168, 0.142, 0.125, 0.094, 0.118, 0.139, 0.104, 0.082] },
    ReferenceIndicator { id: "PLR", sector: Monetary, polarity: Positive, units: Fraction,
        display_name: "Performing Loan Ratio", mean: 0.8986, std: 0.0135,
        shape: [0.908, 0.901, 0.897, 0.903, 0.921, 0.916, 0.909, 0.891, 0.8744] },
    ReferenceIndicator { id: "CRAR", sector: Monetary, polarity: Positive, units: Fraction,
        display_name: "Capital to Risk-weighted Asset Ratio", mean: 0.1112, std: 0.0047,
        shape: [0.107, 0.109, 0.112, 0.116, 0.118, 0.117, 0.113, 0.109, 0.104] },
    ReferenceIndicator { id: "ROA", sector: Monetary, polarity: Positive, units: Fraction,
        display_name: "Return on Assets", mean: 0.0038, std: 0.0008,
        shape: [0.0045, 0.0048, 0.0041, 0.0043, 0.0038, 0.0036, 0.0033, 0.0029, 0.0025] },
    ReferenceIndicator { id: "CMR", sector: Monetary, polarity: Positive, units: Fraction,
        display_name: "Capital Market Return", mean: 0.0385, std: 0.2356,
        shape: [0.088, 0.241, -0.137, -0.062, 0.184, 0.251, -0.081, -0.192, -0.214] },
    ReferenceIndicator { id: "CR", sector: Monetary, polarity: Negative, units: Fraction,
        display_name: "Call Money Rate", mean: 0.0476, std: 0.0195,
        shape: [0.0365, 0.0381, 0.0334, 0.0452, 0.0491, 0.0223, 0.0375, 0.0614, 0.0912] },
];

fn sector_size(sector: SectorId) -> usize {
    REFERENCE_INDICATORS
        .iter()
        .filter(|r| r.sector == sector)
        .count()
}

fn registry_with_weights(weight_of: impl Fn(SectorId) -> f64) -> Vec<IndicatorSpec> {
    REFERENCE_INDICATORS
        .iter()
        .map(|r| IndicatorSpec {
            indicator_id: r.id.to_owned(),
            sector: r.sector,
            polarity: r.polarity,
            within_weight: weight_of(r.sector),
            units: r.units,
            display_name: r.display_name.to_owned(),
        })
        .collect()
}

/// The 19-indicator registry with sector-mode weights: each sector's
/// indicators weighted uniformly at `1 / n_sector`.
pub fn reference_registry() -> Vec<IndicatorSpec> {
    registry_with_weights(|sector| 1.0 / sector_size(sector) as f64)
}

/// The same registry with flat weights: every indicator at `1 / 19`.
pub fn reference_flat_registry() -> Vec<IndicatorSpec> {
    registry_with_weights(|_| 1.0 / REFERENCE_INDICATORS.len() as f64)
}

/// Affine rescale: preserve the shape's z-profile, hit the target sample
/// mean and standard deviation.
fn rescale(shape: &[f64; YEAR_COUNT], mean: f64, std: f64) -> [f64; YEAR_COUNT] {
    let n = shape.len() as f64;
    let shape_mean = shape.iter().sum::<f64>() / n;
    let shape_var = shape
        .iter()
        .map(|v| (v - shape_mean) * (v - shape_mean))
        .sum::<f64>()
        / (n - 1.0);
    let scale = std / shape_var.sqrt();
    shape.map(|v| mean + (v - shape_mean) * scale)
}

/// The synthetic reference panel, 19 indicators by 9 fiscal years.
pub fn reference_panel() -> Panel {
    let mut panel = Panel::new();
    for indicator in &REFERENCE_INDICATORS {
        let values = rescale(&indicator.shape, indicator.mean, indicator.std);
        for (offset, value) in values.iter().enumerate() {
            panel.insert(indicator.id, FIRST_YEAR + offset as i32, *value);
        }
    }
    panel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregate::run_pipeline;
    use crate::analysis::{yoy_direction, Direction};
    use crate::model::{
        validate_panel, validate_registry, IndexConfig, StdMode, WeightingMode,
    };
    use crate::normalize::summary_stats;

    #[test]
    fn panel_hits_every_calibration_target() {
        let panel = reference_panel();
        for indicator in &REFERENCE_INDICATORS {
            let series = panel.series(indicator.id).unwrap();
            let stats = summary_stats(indicator.id, &series, StdMode::Sample).unwrap();
            assert!(
                (stats.mean - indicator.mean).abs() < 1e-12,
                "{}: mean {} vs {}",
                indicator.id,
                stats.mean,
                indicator.mean
            );
            assert!(
                (stats.std - indicator.std).abs() < 1e-12,
                "{}: std {} vs {}",
                indicator.id,
                stats.std,
                indicator.std
            );
        }
    }

    #[test]
    fn registries_validate_under_their_modes() {
        let sector_config = IndexConfig::default();
        let report = validate_registry(&reference_registry(), &sector_config);
        assert!(report.is_ok(), "{report}");

        let flat_config = IndexConfig {
            weighting_mode: WeightingMode::Flat,
            ..IndexConfig::default()
        };
        let report = validate_registry(&reference_flat_registry(), &flat_config);
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn panel_validates_cleanly() {
        let report = validate_panel(&reference_panel(), &reference_registry());
        assert!(report.is_ok(), "{report}");
        assert!(report.violations.is_empty());
    }

    #[test]
    fn flat_weight_is_one_nineteenth() {
        let registry = reference_flat_registry();
        for spec in &registry {
            assert_eq!(spec.within_weight, 1.0 / 19.0);
        }
        assert_eq!(format!("{:.4}", registry[0].within_weight), "0.0526");
    }

    #[test]
    fn final_year_tells_the_intended_story() {
        // Monetary and external sub-indices fall in the final year, real and
        // fiscal rise, and the composite falls.
        let series = run_pipeline(
            &reference_panel(),
            &reference_registry(),
            &IndexConfig::default(),
        )
        .unwrap();
        let last = yoy_direction(&series).pop().unwrap();
        assert_eq!(last.year, LAST_YEAR);
        assert_eq!(last.sector(SectorId::Monetary), Direction::Down);
        assert_eq!(last.sector(SectorId::External), Direction::Down);
        assert_eq!(last.sector(SectorId::Real), Direction::Up);
        assert_eq!(last.sector(SectorId::Fiscal), Direction::Up);
        assert_eq!(last.afsi, Direction::Down);
    }
}
