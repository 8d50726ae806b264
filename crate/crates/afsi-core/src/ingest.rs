//! Parsers for the three input files: the tidy panel CSV, the indicator
//! registry CSV, and the `key=value` settings file.
//!
//! The formats are deliberately strict: comma field separator only, decimal
//! point only, no quoting (the registry's `display_name` is the final column
//! and may contain spaces but not commas). LF and CRLF line endings are both
//! accepted; blank lines are ignored. Parsers check structure only — semantic
//! rules such as weight sums live in [`crate::model::validate_registry`].

use std::fmt;
use std::str::FromStr;

use crate::model::{
    IndexConfig, IndicatorSpec, Panel, Polarity, SectorId, Units,
};

pub const PANEL_HEADER: &str = "fiscal_year,indicator_id,value";
pub const REGISTRY_HEADER: &str = "indicator_id,sector,polarity,within_weight,units,display_name";

/// Which input file an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileRole {
    Panel,
    Registry,
    Settings,
}

impl fmt::Display for FileRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FileRole::Panel => "panel",
            FileRole::Registry => "registry",
            FileRole::Settings => "settings",
        })
    }
}

/// A parse failure with the 1-based physical line it occurred on.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub file_role: FileRole,
    pub line: usize,
    /// Column (field) name, when the failure is tied to one.
    pub column: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{role} line {line}: ", role = self.file_role, line = self.line)?;
        if let Some(column) = &self.column {
            write!(f, "[{column}] ")?;
        }
        f.write_str(&self.message)
    }
}

impl ParseError {
    fn new(file_role: FileRole, line: usize, column: Option<&str>, message: String) -> Self {
        ParseError {
            file_role,
            line,
            column: column.map(str::to_owned),
            message,
        }
    }
}

/// Non-blank lines with their 1-based physical line numbers, CR stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(i, line)| (i + 1, line.strip_suffix('\r').unwrap_or(line)))
        .filter(|(_, line)| !line.is_empty())
}

fn expect_header<'a, I>(
    rows: &mut std::iter::Peekable<I>,
    expected: &str,
    role: FileRole,
) -> Result<(), ParseError>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    match rows.next() {
        Some((_, header)) if header == expected => Ok(()),
        Some((line, header)) => Err(ParseError::new(
            role,
            line,
            None,
            format!("malformed header: expected \"{expected}\", found \"{header}\""),
        )),
        None => Err(ParseError::new(role, 1, None, "missing header".to_owned())),
    }
}

/// Parse the tidy panel CSV (`fiscal_year,indicator_id,value`).
///
/// Values must be plain decimals; percent signs and any other suffixes are
/// rejected. A repeated `(year, indicator)` pair is an error at the line of
/// the second occurrence.
pub fn parse_panel_csv(text: &str) -> Result<Panel, ParseError> {
    const ROLE: FileRole = FileRole::Panel;
    let mut rows = lines(text).peekable();
    expect_header(&mut rows, PANEL_HEADER, ROLE)?;

    let mut panel = Panel::new();
    for (line, row) in rows {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 3 {
            return Err(ParseError::new(
                ROLE,
                line,
                None,
                format!("expected 3 fields, found {}", fields.len()),
            ));
        }
        let year: i32 = fields[0].parse().map_err(|_| {
            ParseError::new(
                ROLE,
                line,
                Some("fiscal_year"),
                format!("non-integer year: \"{}\"", fields[0]),
            )
        })?;
        let indicator_id = fields[1];
        if indicator_id.is_empty() {
            return Err(ParseError::new(
                ROLE,
                line,
                Some("indicator_id"),
                "empty indicator_id".to_owned(),
            ));
        }
        let value: f64 = fields[2].parse().map_err(|_| {
            ParseError::new(
                ROLE,
                line,
                Some("value"),
                format!("non-numeric value: \"{}\"", fields[2]),
            )
        })?;
        if !panel.insert(indicator_id, year, value) {
            return Err(ParseError::new(
                ROLE,
                line,
                None,
                format!("duplicate cell: {indicator_id} {year}"),
            ));
        }
    }
    Ok(panel)
}

/// Parse the indicator registry CSV.
///
/// Enum fields must be one of the documented tokens; the weight must parse as
/// a decimal but is otherwise unchecked here (stage separation: a negative
/// weight parses fine and is rejected by `validate_registry`).
pub fn parse_indicator_registry(text: &str) -> Result<Vec<IndicatorSpec>, ParseError> {
    const ROLE: FileRole = FileRole::Registry;
    let mut rows = lines(text).peekable();
    expect_header(&mut rows, REGISTRY_HEADER, ROLE)?;

    let mut registry = Vec::new();
    for (line, row) in rows {
        let fields: Vec<&str> = row.split(',').collect();
        if fields.len() != 6 {
            return Err(ParseError::new(
                ROLE,
                line,
                None,
                format!("expected 6 fields, found {}", fields.len()),
            ));
        }
        let indicator_id = fields[0];
        if indicator_id.is_empty() {
            return Err(ParseError::new(
                ROLE,
                line,
                Some("indicator_id"),
                "empty indicator_id".to_owned(),
            ));
        }
        let sector = SectorId::from_str(fields[1]).map_err(|_| {
            ParseError::new(
                ROLE,
                line,
                Some("sector"),
                format!("unknown sector: \"{}\"", fields[1]),
            )
        })?;
        let polarity = Polarity::from_str(fields[2]).map_err(|_| {
            ParseError::new(
                ROLE,
                line,
                Some("polarity"),
                format!("unknown polarity: \"{}\"", fields[2]),
            )
        })?;
        let within_weight: f64 = fields[3].parse().map_err(|_| {
            ParseError::new(
                ROLE,
                line,
                Some("within_weight"),
                format!("non-numeric weight: \"{}\"", fields[3]),
            )
        })?;
        let units = Units::from_str(fields[4]).map_err(|_| {
            ParseError::new(
                ROLE,
                line,
                Some("units"),
                format!("unknown units: \"{}\"", fields[4]),
            )
        })?;
        registry.push(IndicatorSpec {
            indicator_id: indicator_id.to_owned(),
            sector,
            polarity,
            within_weight,
            units,
            display_name: fields[5].to_owned(),
        });
    }
    Ok(registry)
}

/// Parse the settings file: `key=value` lines, `#` starts a comment, blank
/// lines are ignored, omitted keys take the documented defaults. When a key
/// repeats, the last occurrence wins.
pub fn parse_settings(text: &str) -> Result<IndexConfig, ParseError> {
    const ROLE: FileRole = FileRole::Settings;
    let mut config = IndexConfig::default();

    for (line, raw) in lines(text) {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ParseError::new(
                ROLE,
                line,
                None,
                format!("expected key=value, found \"{content}\""),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        let bad_value = |message: String| ParseError::new(ROLE, line, Some(key), message);

        match key {
            "weighting_mode" => {
                config.weighting_mode = match value {
                    "sector" => crate::model::WeightingMode::Sector,
                    "flat" => crate::model::WeightingMode::Flat,
                    _ => {
                        return Err(bad_value(format!(
                            "invalid weighting_mode \"{value}\" (expected sector or flat)"
                        )))
                    }
                };
            }
            "aggregation_order" => {
                config.aggregation_order = match value {
                    "normalize_first" => crate::model::AggregationOrder::NormalizeFirst,
                    "standardize_after" => crate::model::AggregationOrder::StandardizeAfter,
                    _ => {
                        return Err(bad_value(format!(
                            "invalid aggregation_order \"{value}\" \
                             (expected normalize_first or standardize_after)"
                        )))
                    }
                };
            }
            "normalization" => {
                config.normalization = match value {
                    "zscore" => crate::model::Normalization::Zscore,
                    "minmax" => crate::model::Normalization::Minmax,
                    _ => {
                        return Err(bad_value(format!(
                            "invalid normalization \"{value}\" (expected zscore or minmax)"
                        )))
                    }
                };
            }
            "std_mode" => {
                config.std_mode = match value {
                    "sample" => crate::model::StdMode::Sample,
                    "population" => crate::model::StdMode::Population,
                    _ => {
                        return Err(bad_value(format!(
                            "invalid std_mode \"{value}\" (expected sample or population)"
                        )))
                    }
                };
            }
            _ => match key.strip_prefix("sector_weight.") {
                Some(code) => {
                    let sector = SectorId::from_str(code).map_err(|_| {
                        bad_value(format!("unknown sector in sector_weight key: \"{code}\""))
                    })?;
                    let weight: f64 = value.parse().map_err(|_| {
                        bad_value(format!("non-numeric sector weight: \"{value}\""))
                    })?;
                    config.sector_weights.set(sector, weight);
                }
                None => {
                    return Err(ParseError::new(
                        ROLE,
                        line,
                        None,
                        format!("unknown key: \"{key}\""),
                    ))
                }
            },
        }
    }

    Ok(config)
}
