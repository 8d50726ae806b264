//! End-to-end pipeline checks against an independent brute-force
//! recomputation. The oracle below re-derives every sub-index and composite
//! value from raw `(indicator, year, value)` triples with plain loops and
//! hash maps, sharing no code with the library path it checks.

use std::collections::HashMap;

use afsi_core::dataset;
use afsi_core::{
    run_pipeline, AggregationOrder, Error, IndexConfig, IndicatorSpec, Panel, SectorId, StdMode,
    WeightingMode,
};

struct OracleOutput {
    sub: HashMap<&'static str, Vec<f64>>,
    afsi: Vec<f64>,
}

fn oracle_mean_std(series: &[f64], population: bool) -> (f64, f64) {
    let n = series.len() as f64;
    let mean = series.iter().sum::<f64>() / n;
    let denom = if population { n } else { n - 1.0 };
    let var = series.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / denom;
    (mean, var.sqrt())
}

/// Brute-force re-derivation of the whole pipeline from raw triples.
fn oracle(
    cells: &[(String, i32, f64)],
    registry: &[IndicatorSpec],
    config: &IndexConfig,
) -> OracleOutput {
    let mut years: Vec<i32> = cells.iter().map(|(_, y, _)| *y).collect();
    years.sort_unstable();
    years.dedup();

    let mut raw: HashMap<&str, Vec<f64>> = HashMap::new();
    for spec in registry {
        let mut series = Vec::new();
        for year in &years {
            let value = cells
                .iter()
                .find(|(id, y, _)| id == &spec.indicator_id && y == year)
                .map(|(_, _, v)| *v)
                .expect("rectangular panel");
            series.push(value);
        }
        raw.insert(&spec.indicator_id, series);
    }

    let population = config.std_mode == StdMode::Population;
    let flat = config.weighting_mode == WeightingMode::Flat;

    let mut sub: HashMap<&'static str, Vec<f64>> = HashMap::new();
    let mut afsi = vec![0.0; years.len()];

    for sector in SectorId::ALL {
        let members: Vec<&IndicatorSpec> =
            registry.iter().filter(|s| s.sector == sector).collect();
        let sector_total: f64 = members.iter().map(|s| s.within_weight).sum();

        let series = match config.aggregation_order {
            AggregationOrder::NormalizeFirst => {
                let mut values = vec![0.0; years.len()];
                for spec in &members {
                    let x = &raw[spec.indicator_id.as_str()];
                    let (mean, std) = oracle_mean_std(x, population);
                    let weight = if flat {
                        spec.within_weight / sector_total
                    } else {
                        spec.within_weight
                    };
                    let sign = spec.polarity.sign();
                    for (t, v) in x.iter().enumerate() {
                        values[t] += weight * sign * ((v - mean) / std);
                    }
                }
                values
            }
            AggregationOrder::StandardizeAfter => {
                let mut summed = vec![0.0; years.len()];
                for spec in &members {
                    let x = &raw[spec.indicator_id.as_str()];
                    let weight = if flat {
                        spec.within_weight / sector_total
                    } else {
                        spec.within_weight
                    };
                    let sign = spec.polarity.sign();
                    for (t, v) in x.iter().enumerate() {
                        summed[t] += weight * sign * v;
                    }
                }
                let (mean, std) = oracle_mean_std(&summed, population);
                summed.iter().map(|v| (v - mean) / std).collect()
            }
        };

        let composite_weight = if flat {
            sector_total
        } else {
            config.sector_weights.get(sector)
        };
        for (t, v) in series.iter().enumerate() {
            afsi[t] += composite_weight * v;
        }
        sub.insert(sector.code(), series);
    }

    OracleOutput { sub, afsi }
}

fn assert_matches_oracle(panel: &Panel, registry: &[IndicatorSpec], config: &IndexConfig) {
    let cells: Vec<(String, i32, f64)> = panel
        .iter()
        .map(|(id, year, value)| (id.to_owned(), year, value))
        .collect();
    let expected = oracle(&cells, registry, config);
    let series = run_pipeline(panel, registry, config).expect("pipeline runs");

    for sector in SectorId::ALL {
        let got = &series.sector(sector).values;
        let want = &expected.sub[sector.code()];
        for (g, w) in got.iter().zip(want) {
            assert!(
                (g - w).abs() < 1e-12,
                "{sector} sub-index: {g} vs oracle {w}"
            );
        }
    }
    for (g, w) in series.afsi.iter().zip(&expected.afsi) {
        assert!((g - w).abs() < 1e-12, "composite: {g} vs oracle {w}");
    }
}

#[test]
fn reference_dataset_matches_oracle_in_all_four_configurations() {
    let panel = dataset::reference_panel();
    for weighting_mode in [WeightingMode::Sector, WeightingMode::Flat] {
        let registry = match weighting_mode {
            WeightingMode::Sector => dataset::reference_registry(),
            WeightingMode::Flat => dataset::reference_flat_registry(),
        };
        for aggregation_order in [
            AggregationOrder::NormalizeFirst,
            AggregationOrder::StandardizeAfter,
        ] {
            let config = IndexConfig {
                weighting_mode,
                aggregation_order,
                ..IndexConfig::default()
            };
            assert_matches_oracle(&panel, &registry, &config);
        }
    }
}

#[test]
fn population_std_also_matches_oracle() {
    for aggregation_order in [
        AggregationOrder::NormalizeFirst,
        AggregationOrder::StandardizeAfter,
    ] {
        let config = IndexConfig {
            std_mode: StdMode::Population,
            aggregation_order,
            ..IndexConfig::default()
        };
        assert_matches_oracle(
            &dataset::reference_panel(),
            &dataset::reference_registry(),
            &config,
        );
    }
}

#[test]
fn composite_is_the_exact_weighted_fold_of_the_sub_indices() {
    // Sector mode, normalize_first: the composite must equal the fixed-order
    // weighted fold of the published sub-indices bit for bit.
    let config = IndexConfig::default();
    let series = run_pipeline(
        &dataset::reference_panel(),
        &dataset::reference_registry(),
        &config,
    )
    .unwrap();
    for t in 0..series.years.len() {
        let mut acc = 0.0;
        for sector in SectorId::ALL {
            acc += config.sector_weights.get(sector) * series.sector(sector).values[t];
        }
        assert_eq!(acc.to_bits(), series.afsi[t].to_bits());
    }
}

#[test]
fn year_gap_fails_fast_before_any_computation() {
    let mut panel = Panel::new();
    for (id, year, value) in dataset::reference_panel().iter() {
        if year != 2020 {
            panel.insert(id, year, value);
        }
    }
    let err = run_pipeline(
        &panel,
        &dataset::reference_registry(),
        &IndexConfig::default(),
    )
    .unwrap_err();
    match err {
        Error::Validation(report) => {
            assert!(report
                .violations
                .iter()
                .any(|v| v.message == "year gap after 2019"));
        }
        other => panic!("expected validation error, got {other:?}"),
    }
}

#[test]
fn row_order_does_not_affect_the_output() {
    let panel = dataset::reference_panel();
    let registry = dataset::reference_registry();
    let config = IndexConfig::default();
    let baseline = run_pipeline(&panel, &registry, &config).unwrap();

    // Reverse registry rows and rebuild the panel in reverse insertion order.
    let mut reversed_registry = registry.clone();
    reversed_registry.reverse();
    let mut reversed_panel = Panel::new();
    let cells: Vec<(String, i32, f64)> = panel
        .iter()
        .map(|(id, y, v)| (id.to_owned(), y, v))
        .collect();
    for (id, year, value) in cells.iter().rev() {
        reversed_panel.insert(id, *year, *value);
    }

    let shuffled = run_pipeline(&reversed_panel, &reversed_registry, &config).unwrap();
    assert_eq!(baseline, shuffled); // bit-for-bit
}

#[test]
fn flat_mode_equals_sector_mode_with_implied_weights() {
    let panel = dataset::reference_panel();
    let flat_config = IndexConfig {
        weighting_mode: WeightingMode::Flat,
        ..IndexConfig::default()
    };
    let flat = run_pipeline(&panel, &dataset::reference_flat_registry(), &flat_config).unwrap();

    let mut sector_config = IndexConfig::default();
    sector_config
        .sector_weights
        .set(SectorId::Real, 5.0 / 19.0);
    sector_config
        .sector_weights
        .set(SectorId::Fiscal, 3.0 / 19.0);
    sector_config
        .sector_weights
        .set(SectorId::External, 5.0 / 19.0);
    sector_config
        .sector_weights
        .set(SectorId::Monetary, 6.0 / 19.0);
    let sector =
        run_pipeline(&panel, &dataset::reference_registry(), &sector_config).unwrap();

    for (f, s) in flat.afsi.iter().zip(&sector.afsi) {
        assert!((f - s).abs() < 1e-12, "{f} vs {s}");
    }
    for id in SectorId::ALL {
        for (f, s) in flat
            .sector(id)
            .values
            .iter()
            .zip(&sector.sector(id).values)
        {
            assert!((f - s).abs() < 1e-12);
        }
    }
}

#[test]
fn adding_a_year_changes_earlier_normalized_values() {
    // Full-window normalization: extending the sample moves the statistics,
    // so earlier index values shift too. The recomputation over the extended
    // panel is the reference.
    let registry = dataset::reference_registry();
    let config = IndexConfig::default();
    let panel = dataset::reference_panel();
    let baseline = run_pipeline(&panel, &registry, &config).unwrap();

    let mut extended = panel.clone();
    for spec in &registry {
        let last = extended.value(&spec.indicator_id, dataset::LAST_YEAR).unwrap();
        extended.insert(&spec.indicator_id, dataset::LAST_YEAR + 1, last * 1.07 + 0.01);
    }
    let recomputed = run_pipeline(&extended, &registry, &config).unwrap();
    let first_before = baseline.afsi[0];
    let first_after = recomputed.afsi[0];
    assert!(
        (first_before - first_after).abs() > 1e-9,
        "earlier values should move when the window grows: {first_before} vs {first_after}"
    );
}
