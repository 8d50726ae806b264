//! Dependency-free SVG line charts. Output is a standalone SVG 1.1 document
//! and is byte-identical for identical input.

use std::fmt::Write;

use afsi_core::SectorIndexSeries;

pub const DEFAULT_WIDTH: u32 = 800;
pub const DEFAULT_HEIGHT: u32 = 450;

const MARGIN_LEFT: f64 = 62.0;
const MARGIN_RIGHT: f64 = 18.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 46.0;
const PALETTE: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

/// A titled line chart over a fiscal-year axis. The x ticks are exactly the
/// years given; the y axis auto-scales to the data range padded by 10%.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub title: String,
    pub series_labels: Vec<String>,
    pub years: Vec<i32>,
    /// One value row per label, each as long as `years`.
    pub series: Vec<Vec<f64>>,
    pub width: u32,
    pub height: u32,
}

impl ChartSpec {
    pub fn single(title: &str, label: &str, years: &[i32], values: &[f64]) -> ChartSpec {
        ChartSpec {
            title: title.to_owned(),
            series_labels: vec![label.to_owned()],
            years: years.to_vec(),
            series: vec![values.to_vec()],
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
        }
    }

    pub fn from_sector_series(title: &str, series: &SectorIndexSeries) -> ChartSpec {
        ChartSpec::single(title, series.sector.code(), &series.years, &series.values)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChartError {
    #[error("a line chart needs at least 2 data points, got {0}")]
    TooFewPoints(usize),
    #[error("chart has no series")]
    NoSeries,
    #[error("series \"{label}\" has {len} values for {years} years")]
    LengthMismatch {
        label: String,
        len: usize,
        years: usize,
    },
}

/// Render the chart as a standalone SVG document.
pub fn emit_svg(chart: &ChartSpec) -> Result<String, ChartError> {
    if chart.years.len() < 2 {
        return Err(ChartError::TooFewPoints(chart.years.len()));
    }
    if chart.series.is_empty() {
        return Err(ChartError::NoSeries);
    }
    for (label, values) in chart.series_labels.iter().zip(&chart.series) {
        if values.len() != chart.years.len() {
            return Err(ChartError::LengthMismatch {
                label: label.clone(),
                len: values.len(),
                years: chart.years.len(),
            });
        }
    }

    let width = chart.width as f64;
    let height = chart.height as f64;
    let plot_w = width - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = height - MARGIN_TOP - MARGIN_BOTTOM;

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for values in &chart.series {
        for v in values {
            lo = lo.min(*v);
            hi = hi.max(*v);
        }
    }
    if hi > lo {
        let pad = 0.10 * (hi - lo);
        lo -= pad;
        hi += pad;
    } else {
        // Flat series: give the line one unit of headroom each way.
        lo -= 1.0;
        hi += 1.0;
    }

    let n = chart.years.len();
    let x = |i: usize| MARGIN_LEFT + plot_w * (i as f64) / ((n - 1) as f64);
    let y = |v: f64| MARGIN_TOP + plot_h * (hi - v) / (hi - lo);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = chart.width,
        h = chart.height
    );
    let _ = writeln!(
        svg,
        r#"  <rect width="{w}" height="{h}" fill="white"/>"#,
        w = chart.width,
        h = chart.height
    );
    let _ = writeln!(
        svg,
        r#"  <title>{}</title>"#,
        escape_text(&chart.title)
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{:.2}" y="26" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        width / 2.0,
        escape_text(&chart.title)
    );

    // Horizontal gridlines and y tick labels at five evenly spaced levels.
    for tick in 0..5 {
        let value = lo + (hi - lo) * (tick as f64) / 4.0;
        let ty = y(value);
        let _ = writeln!(
            svg,
            r##"  <line x1="{x1:.2}" y1="{ty:.2}" x2="{x2:.2}" y2="{ty:.2}" stroke="#dddddd" stroke-width="1"/>"##,
            x1 = MARGIN_LEFT,
            x2 = MARGIN_LEFT + plot_w,
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{tx:.2}" y="{ty:.2}" font-family="sans-serif" font-size="11" text-anchor="end" dominant-baseline="middle">{label}</text>"#,
            tx = MARGIN_LEFT - 8.0,
            label = format_value(value),
        );
    }

    // Zero gridline whenever zero lies inside the y range.
    if lo <= 0.0 && 0.0 <= hi {
        let zy = y(0.0);
        let _ = writeln!(
            svg,
            r##"  <line class="zero" x1="{x1:.2}" y1="{zy:.2}" x2="{x2:.2}" y2="{zy:.2}" stroke="#888888" stroke-width="1" stroke-dasharray="4,3"/>"##,
            x1 = MARGIN_LEFT,
            x2 = MARGIN_LEFT + plot_w,
        );
    }

    // X ticks: exactly the fiscal years.
    let axis_y = MARGIN_TOP + plot_h;
    for (i, year) in chart.years.iter().enumerate() {
        let tx = x(i);
        let _ = writeln!(
            svg,
            r##"  <line x1="{tx:.2}" y1="{axis_y:.2}" x2="{tx:.2}" y2="{ty:.2}" stroke="#333333" stroke-width="1"/>"##,
            ty = axis_y + 4.0,
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{tx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="11" text-anchor="middle">{year}</text>"#,
            ly = axis_y + 18.0,
        );
    }

    // Plot border.
    let _ = writeln!(
        svg,
        r##"  <rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="#333333" stroke-width="1"/>"##,
        x = MARGIN_LEFT,
        y = MARGIN_TOP,
        w = plot_w,
        h = plot_h,
    );

    // One polyline per series.
    for (s, values) in chart.series.iter().enumerate() {
        let mut points = String::new();
        for (i, v) in values.iter().enumerate() {
            if i > 0 {
                points.push(' ');
            }
            let _ = write!(points, "{:.2},{:.2}", x(i), y(*v));
        }
        let _ = writeln!(
            svg,
            r#"  <polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>"#,
            color = PALETTE[s % PALETTE.len()],
        );
    }

    // Legend only when there is more than one series to distinguish.
    if chart.series.len() > 1 {
        for (s, label) in chart.series_labels.iter().enumerate() {
            let ly = MARGIN_TOP + 14.0 + 16.0 * s as f64;
            let lx = MARGIN_LEFT + plot_w - 110.0;
            let _ = writeln!(
                svg,
                r#"  <line x1="{lx:.2}" y1="{ly:.2}" x2="{x2:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"/>"#,
                x2 = lx + 22.0,
                color = PALETTE[s % PALETTE.len()],
            );
            let _ = writeln!(
                svg,
                r#"  <text x="{tx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="11" dominant-baseline="middle">{label}</text>"#,
                tx = lx + 28.0,
                label = escape_text(label),
            );
        }
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape_text(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Tick label: four significant decimals, trimmed of a redundant exponent.
fn format_value(value: f64) -> String {
    if value == 0.0 {
        return "0".to_owned();
    }
    let magnitude = value.abs();
    if (0.001..10000.0).contains(&magnitude) {
        format!("{value:.4}")
    } else {
        format!("{value:.3e}")
    }
}
