//! CSV emission and re-reading for the tool's tables.
//!
//! Derived tables (`indices.csv`, `stats.csv`) carry 17 significant digits so
//! that re-parsing recovers every double bit-exactly; panel re-emission uses
//! the shortest round-tripping form. All emitted line terminators are LF.

use afsi_core::{
    Panel, SectorId, SectorIndexSeries, StabilityIndexSeries, SummaryStats, WarningFlag,
    WhatIfResult,
};

pub const INDICES_HEADER: &str = "fiscal_year,RS,FS,ES,MS,AFSI";
pub const STATS_HEADER: &str = "indicator_id,mean,std,n";
pub const FLAGS_HEADER: &str = "series,fiscal_year,severity,trigger";
pub const WHATIF_HEADER: &str = "indicator_id,fiscal_year,delta,delta_sub_index,delta_afsi,\
                                 predicted_delta_sub_index,predicted_delta_afsi";

/// 17 significant digits; parses back to the identical double.
pub fn fmt_full(value: f64) -> String {
    format!("{value:.16e}")
}

/// `fiscal_year,RS,FS,ES,MS,AFSI`, one row per year, full precision.
pub fn write_indices_csv(series: &StabilityIndexSeries) -> String {
    let mut out = String::from(INDICES_HEADER);
    out.push('\n');
    for (t, year) in series.years.iter().enumerate() {
        out.push_str(&year.to_string());
        for sector in SectorId::ALL {
            out.push(',');
            out.push_str(&fmt_full(series.sector(sector).values[t]));
        }
        out.push(',');
        out.push_str(&fmt_full(series.afsi[t]));
        out.push('\n');
    }
    out
}

/// Re-read an `indices.csv` produced by [`write_indices_csv`].
pub fn parse_indices_csv(text: &str) -> Result<StabilityIndexSeries, String> {
    let mut lines = text.lines().filter(|l| !l.is_empty());
    match lines.next() {
        Some(header) if header == INDICES_HEADER => {}
        other => return Err(format!("malformed indices header: {other:?}")),
    }
    let mut years = Vec::new();
    let mut columns: [Vec<f64>; 5] = Default::default();
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(format!("expected 6 fields, found {}", fields.len()));
        }
        years.push(fields[0].parse::<i32>().map_err(|e| e.to_string())?);
        for (i, field) in fields[1..].iter().enumerate() {
            columns[i].push(field.parse::<f64>().map_err(|e| e.to_string())?);
        }
    }
    let sectors = SectorId::ALL.map(|sector| SectorIndexSeries {
        sector,
        years: years.clone(),
        values: columns[sector.index()].clone(),
    });
    Ok(StabilityIndexSeries {
        years,
        sectors,
        afsi: columns[4].clone(),
    })
}

/// `indicator_id,mean,std,n`, full precision.
pub fn write_stats_csv(stats: &[SummaryStats]) -> String {
    let mut out = String::from(STATS_HEADER);
    out.push('\n');
    for s in stats {
        out.push_str(&format!(
            "{id},{mean},{std},{n}\n",
            id = s.indicator_id,
            mean = fmt_full(s.mean),
            std = fmt_full(s.std),
            n = s.n
        ));
    }
    out
}

/// `series,fiscal_year,severity,trigger`.
pub fn write_flags_csv(flags: &[WarningFlag]) -> String {
    let mut out = String::from(FLAGS_HEADER);
    out.push('\n');
    for flag in flags {
        out.push_str(&format!(
            "{series},{year},{severity},{trigger}\n",
            series = flag.series_label,
            year = flag.year,
            severity = flag.severity,
            trigger = flag.trigger
        ));
    }
    out
}

/// One row per what-if run; predicted columns are empty under
/// `standardize_after` where no closed form exists.
pub fn write_whatif_csv(result: &WhatIfResult) -> String {
    let fmt_opt = |v: Option<f64>| v.map(fmt_full).unwrap_or_default();
    let mut out = String::from(WHATIF_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "{id},{year},{delta},{dsub},{dafsi},{psub},{pafsi}\n",
        id = result.indicator_id,
        year = result.year,
        delta = fmt_full(result.delta),
        dsub = fmt_full(result.delta_sub_index),
        dafsi = fmt_full(result.delta_afsi),
        psub = fmt_opt(result.predicted_delta_sub_index),
        pafsi = fmt_opt(result.predicted_delta_afsi),
    ));
    out
}

/// Emit a panel back to the tidy input format, rows sorted by year then
/// indicator. Values use the shortest representation that re-parses to the
/// identical double, so emit-then-parse is cell-exact.
pub fn write_panel_csv(panel: &Panel) -> String {
    let mut rows: Vec<(i32, &str, f64)> = panel
        .iter()
        .map(|(id, year, value)| (year, id, value))
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let mut out = String::from(afsi_core::ingest::PANEL_HEADER);
    out.push('\n');
    for (year, id, value) in rows {
        out.push_str(&format!("{year},{id},{value}\n"));
    }
    out
}

/// Emit a registry in the input format, one row per indicator in the given
/// order. Weights use the shortest round-tripping representation.
pub fn write_registry_csv(registry: &[afsi_core::IndicatorSpec]) -> String {
    let mut out = String::from(afsi_core::ingest::REGISTRY_HEADER);
    out.push('\n');
    for spec in registry {
        out.push_str(&format!(
            "{id},{sector},{polarity},{weight},{units},{name}\n",
            id = spec.indicator_id,
            sector = spec.sector,
            polarity = spec.polarity,
            weight = spec.within_weight,
            units = spec.units,
            name = spec.display_name,
        ));
    }
    out
}
