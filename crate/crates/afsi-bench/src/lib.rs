//! Synthetic fixtures for benchmarking: registries and panels of arbitrary
//! size with valid sector-mode weights and contiguous years.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use afsi_core::{IndicatorSpec, Panel, Polarity, SectorId, Units};

/// A registry of `n_indicators` spread round-robin over the four sectors,
/// uniform within-sector weights, alternating polarity.
pub fn synthetic_registry(n_indicators: usize) -> Vec<IndicatorSpec> {
    assert!(n_indicators >= 4, "need at least one indicator per sector");
    let sectors: Vec<SectorId> = (0..n_indicators).map(|i| SectorId::ALL[i % 4]).collect();
    (0..n_indicators)
        .map(|i| {
            let n_sector = sectors.iter().filter(|s| **s == sectors[i]).count();
            IndicatorSpec {
                indicator_id: format!("I{i:03}"),
                sector: sectors[i],
                polarity: if i % 3 == 0 {
                    Polarity::Negative
                } else {
                    Polarity::Positive
                },
                within_weight: 1.0 / n_sector as f64,
                units: Units::Fraction,
                display_name: format!("Synthetic indicator {i}"),
            }
        })
        .collect()
}

/// A rectangular panel over `n_years` contiguous years with reproducible
/// pseudo-random values.
pub fn synthetic_panel(registry: &[IndicatorSpec], n_years: usize, seed: u64) -> Panel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut panel = Panel::new();
    for spec in registry {
        for t in 0..n_years {
            panel.insert(
                &spec.indicator_id,
                2000 + t as i32,
                rng.random_range(-10.0..10.0) + t as f64 * 1e-3,
            );
        }
    }
    panel
}
