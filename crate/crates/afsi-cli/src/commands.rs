//! Command implementations shared by the binary and the integration tests.
//!
//! Exit-code discipline: 0 success, 1 validation or computation failure,
//! 2 parse/IO/usage failure. Diagnostics go to stderr, data to stdout or to
//! files under `--out-dir`.

use std::fs;
use std::path::{Path, PathBuf};

use afsi_core::analysis::{DEFAULT_ALERT_K, DEFAULT_WATCH_K};
use afsi_core::{
    panel_stats, run_pipeline, validate_panel, validate_registry, warning_flags, whatif,
    yoy_direction, IndexConfig, IndicatorSpec, Panel, ParseError, SectorId, ValidationReport,
};

use crate::chart::{emit_svg, ChartError, ChartSpec};
use crate::report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Validation(ValidationReport),
    #[error(transparent)]
    Compute(afsi_core::Error),
    #[error(transparent)]
    Chart(#[from] ChartError),
}

impl CliError {
    /// 2 for parse/IO failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}

impl From<afsi_core::Error> for CliError {
    fn from(error: afsi_core::Error) -> Self {
        match error {
            afsi_core::Error::Validation(report) => CliError::Validation(report),
            afsi_core::Error::Parse(source) => CliError::Parse {
                path: PathBuf::from("<input>"),
                source,
            },
            other => CliError::Compute(other),
        }
    }
}

/// The three input files; settings are optional and default to the
/// documented configuration.
pub struct Inputs {
    pub panel: Panel,
    pub registry: Vec<IndicatorSpec>,
    pub config: IndexConfig,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_inputs(
    panel_path: &Path,
    indicators_path: &Path,
    settings_path: Option<&Path>,
) -> Result<Inputs, CliError> {
    let parse_err = |path: &Path| {
        let path = path.to_owned();
        move |source: ParseError| CliError::Parse { path, source }
    };
    let panel = afsi_core::parse_panel_csv(&read(panel_path)?).map_err(parse_err(panel_path))?;
    let registry = afsi_core::parse_indicator_registry(&read(indicators_path)?)
        .map_err(parse_err(indicators_path))?;
    let config = match settings_path {
        Some(path) => afsi_core::parse_settings(&read(path)?).map_err(parse_err(path))?,
        None => IndexConfig::default(),
    };
    Ok(Inputs {
        panel,
        registry,
        config,
    })
}

/// Validate both inputs. Errors become a `Validation` failure; warnings are
/// printed to stderr and do not block.
fn check(inputs: &Inputs) -> Result<(), CliError> {
    let mut combined = validate_registry(&inputs.registry, &inputs.config);
    let panel_report = validate_panel(&inputs.panel, &inputs.registry);
    combined.violations.extend(panel_report.violations);
    for warning in combined.warnings() {
        eprintln!("warning: {}", warning.message);
    }
    if combined.is_ok() {
        Ok(())
    } else {
        Err(CliError::Validation(combined))
    }
}

fn chart_title(sector: SectorId) -> &'static str {
    match sector {
        SectorId::Real => "Real Sector Index",
        SectorId::Fiscal => "Fiscal Sector Index",
        SectorId::External => "External Sector Index",
        SectorId::Monetary => "Financial and Monetary Sector Index",
    }
}

fn chart_file(sector: SectorId) -> &'static str {
    match sector {
        SectorId::Real => "rsi.svg",
        SectorId::Fiscal => "fsi.svg",
        SectorId::External => "esi.svg",
        SectorId::Monetary => "msi.svg",
    }
}

/// `compute`: run the full pipeline, write the CSV tables and the five
/// charts, print a final-year summary line per series.
pub fn run_compute(
    panel_path: &Path,
    indicators_path: &Path,
    settings_path: Option<&Path>,
    out_dir: &Path,
) -> Result<(), CliError> {
    let inputs = load_inputs(panel_path, indicators_path, settings_path)?;
    check(&inputs)?;
    let series = run_pipeline(&inputs.panel, &inputs.registry, &inputs.config)?;
    let stats = panel_stats(&inputs.panel, &inputs.registry, inputs.config.std_mode)
        .map_err(afsi_core::Error::from)?;
    let flags = warning_flags(&series, inputs.config.std_mode, DEFAULT_WATCH_K, DEFAULT_ALERT_K);

    fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.to_owned(),
        source,
    })?;
    write(&out_dir.join("indices.csv"), &report::write_indices_csv(&series))?;
    write(&out_dir.join("stats.csv"), &report::write_stats_csv(&stats))?;
    write(&out_dir.join("flags.csv"), &report::write_flags_csv(&flags))?;
    for sector in SectorId::ALL {
        let chart = ChartSpec::from_sector_series(chart_title(sector), series.sector(sector));
        write(&out_dir.join(chart_file(sector)), &emit_svg(&chart)?)?;
    }
    let afsi_chart = ChartSpec::single(
        "Aggregate Financial Stability Index",
        "AFSI",
        &series.years,
        &series.afsi,
    );
    write(&out_dir.join("afsi.svg"), &emit_svg(&afsi_chart)?)?;

    let directions = yoy_direction(&series);
    let last = directions.last().expect("at least two years");
    let final_year = *series.years.last().expect("non-empty");
    for sector in SectorId::ALL {
        println!(
            "{code:<4} {year}: {value:+.4} (YoY {dir})",
            code = sector.code(),
            year = final_year,
            value = series.sector(sector).values.last().unwrap(),
            dir = last.sector(sector)
        );
    }
    println!(
        "AFSI {year}: {value:+.4} (YoY {dir})",
        year = final_year,
        value = series.afsi.last().unwrap(),
        dir = last.afsi
    );
    Ok(())
}

/// `stats`: print the per-indicator summary table; write `stats.csv` when an
/// output directory is given.
pub fn run_stats(
    panel_path: &Path,
    indicators_path: &Path,
    settings_path: Option<&Path>,
    out_dir: Option<&Path>,
) -> Result<(), CliError> {
    let inputs = load_inputs(panel_path, indicators_path, settings_path)?;
    check(&inputs)?;
    let stats = panel_stats(&inputs.panel, &inputs.registry, inputs.config.std_mode)
        .map_err(afsi_core::Error::from)?;

    println!("{:<12} {:<22} {}", "indicator_id", "mean (std)", "n");
    for s in &stats {
        let value = format!("{:.4} ({:.4})", s.mean, s.std);
        println!("{:<12} {:<22} {}", s.indicator_id, value, s.n);
    }

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_owned(),
            source,
        })?;
        write(&dir.join("stats.csv"), &report::write_stats_csv(&stats))?;
    }
    Ok(())
}

/// `validate`: print every violation; exit nonzero only on errors.
pub fn run_validate(
    panel_path: &Path,
    indicators_path: &Path,
    settings_path: Option<&Path>,
) -> Result<(), CliError> {
    let inputs = load_inputs(panel_path, indicators_path, settings_path)?;
    let mut combined = validate_registry(&inputs.registry, &inputs.config);
    combined
        .violations
        .extend(validate_panel(&inputs.panel, &inputs.registry).violations);
    for warning in combined.warnings() {
        eprintln!("warning: {}", warning.message);
    }
    if combined.is_ok() {
        println!(
            "ok: {indicators} indicators, {years} years, {warnings} warning(s)",
            indicators = inputs.registry.len(),
            years = inputs.panel.years().len(),
            warnings = combined.warnings().count()
        );
        Ok(())
    } else {
        Err(CliError::Validation(combined))
    }
}

/// `whatif`: perturb one cell under frozen statistics and print the
/// recomputed and closed-form changes side by side.
pub fn run_whatif(
    panel_path: &Path,
    indicators_path: &Path,
    settings_path: Option<&Path>,
    indicator: &str,
    year: i32,
    delta: f64,
    out_dir: Option<&Path>,
) -> Result<(), CliError> {
    let inputs = load_inputs(panel_path, indicators_path, settings_path)?;
    check(&inputs)?;
    let result = whatif(
        &inputs.panel,
        &inputs.registry,
        &inputs.config,
        indicator,
        year,
        delta,
    )?;

    println!(
        "what-if: {id} ({sector}) {year}, delta {delta}",
        id = result.indicator_id,
        sector = result.sector,
        year = result.year,
        delta = result.delta
    );
    println!(
        "{:<12} {:>26} {:>26}",
        "", "delta sub-index", "delta AFSI"
    );
    println!(
        "{:<12} {:>26} {:>26}",
        "recomputed",
        format!("{:+.12e}", result.delta_sub_index),
        format!("{:+.12e}", result.delta_afsi)
    );
    match (
        result.predicted_delta_sub_index,
        result.predicted_delta_afsi,
    ) {
        (Some(sub), Some(afsi)) => println!(
            "{:<12} {:>26} {:>26}",
            "closed form",
            format!("{sub:+.12e}"),
            format!("{afsi:+.12e}")
        ),
        _ => println!("closed form   n/a (standardize_after recomputes the summed series)"),
    }

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_owned(),
            source,
        })?;
        write(&dir.join("whatif.csv"), &report::write_whatif_csv(&result))?;
    }
    Ok(())
}
