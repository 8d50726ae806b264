//! Binary-level behavior: exit codes, error routing, printed output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn afsi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_afsi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn afsi_on_data(subcommand: &str, extra: &[&str]) -> Output {
    let panel = data_dir().join("panel.csv");
    let indicators = data_dir().join("indicators.csv");
    let mut args = vec![
        subcommand.to_owned(),
        "--panel".to_owned(),
        panel.to_string_lossy().into_owned(),
        "--indicators".to_owned(),
        indicators.to_string_lossy().into_owned(),
    ];
    args.extend(extra.iter().map(|s| s.to_string()));
    Command::new(env!("CARGO_BIN_EXE_afsi"))
        .args(&args)
        .output()
        .expect("binary runs")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn compute_happy_path_writes_eight_files() {
    let out = tempfile::tempdir().unwrap();
    let output = afsi_on_data(
        "compute",
        &["--out-dir", &out.path().to_string_lossy()],
    );
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    for name in [
        "indices.csv",
        "stats.csv",
        "flags.csv",
        "rsi.svg",
        "fsi.svg",
        "esi.svg",
        "msi.svg",
        "afsi.svg",
    ] {
        assert!(out.path().join(name).exists(), "{name} missing");
    }
    let stdout = stdout_of(&output);
    for label in ["RS", "FS", "ES", "MS", "AFSI"] {
        assert!(
            stdout.lines().any(|l| l.starts_with(label)),
            "no summary line for {label}: {stdout}"
        );
    }
    assert!(stdout.contains("YoY"));
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let output = afsi(&["compute", "--indicators", "x.csv", "--out-dir", "/tmp/x"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("Usage"), "{stderr}");
    assert!(stderr.contains("--panel"), "{stderr}");
}

#[test]
fn unreadable_input_exits_two() {
    let output = afsi(&[
        "stats",
        "--panel",
        "/nonexistent/panel.csv",
        "--indicators",
        "/nonexistent/indicators.csv",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("/nonexistent/panel.csv"));
}

#[test]
fn year_gap_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let panel_path = dir.path().join("panel.csv");
    let full = fs::read_to_string(data_dir().join("panel.csv")).unwrap();
    let gapped: String = full
        .lines()
        .filter(|l| !l.starts_with("2020,"))
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(&panel_path, gapped).unwrap();

    let output = afsi(&[
        "compute",
        "--panel",
        &panel_path.to_string_lossy(),
        "--indicators",
        &data_dir().join("indicators.csv").to_string_lossy(),
        "--out-dir",
        &dir.path().join("out").to_string_lossy(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("year gap"), "{}", stderr_of(&output));
}

#[test]
fn parse_error_names_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let panel_path = dir.path().join("panel.csv");
    fs::write(
        &panel_path,
        "fiscal_year,indicator_id,value\n2016,GDPG,6.52%\n",
    )
    .unwrap();
    let output = afsi(&[
        "validate",
        "--panel",
        &panel_path.to_string_lossy(),
        "--indicators",
        &data_dir().join("indicators.csv").to_string_lossy(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("panel.csv"), "{stderr}");
    assert!(stderr.contains("line 2"), "{stderr}");
    assert!(stderr.contains("non-numeric value"), "{stderr}");
}

#[test]
fn unknown_settings_key_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let settings = dir.path().join("settings.cfg");
    fs::write(&settings, "window=rolling\n").unwrap();
    let output = afsi_on_data("validate", &["--settings", &settings.to_string_lossy()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("unknown key"));
}

#[test]
fn validate_reports_ok_on_the_reference_data() {
    let output = afsi_on_data("validate", &[]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout_of(&output).starts_with("ok:"));
}

#[test]
fn zero_dispersion_warns_on_stats_but_fails_compute() {
    let dir = tempfile::tempdir().unwrap();
    let panel_path = dir.path().join("panel.csv");
    let full = fs::read_to_string(data_dir().join("panel.csv")).unwrap();
    let constant: String = full
        .lines()
        .map(|l| {
            if l.contains(",REER,") {
                let year = l.split(',').next().unwrap();
                format!("{year},REER,104.86\n")
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    fs::write(&panel_path, constant).unwrap();
    let indicators = data_dir().join("indicators.csv").to_string_lossy().into_owned();

    let stats = afsi(&[
        "stats",
        "--panel",
        &panel_path.to_string_lossy(),
        "--indicators",
        &indicators,
    ]);
    assert_eq!(stats.status.code(), Some(0));
    assert!(stderr_of(&stats).contains("zero dispersion: REER"));
    let reer_line = stdout_of(&stats)
        .lines()
        .find(|l| l.starts_with("REER"))
        .unwrap()
        .to_owned();
    assert!(reer_line.contains("(0.0000)"), "{reer_line}");

    let compute = afsi(&[
        "compute",
        "--panel",
        &panel_path.to_string_lossy(),
        "--indicators",
        &indicators,
        "--out-dir",
        &dir.path().join("out").to_string_lossy(),
    ]);
    assert_eq!(compute.status.code(), Some(1));
    assert!(stderr_of(&compute).contains("zero dispersion: REER"));
}

#[test]
fn stats_reports_the_observation_count() {
    let dir = tempfile::tempdir().unwrap();
    let panel_path = dir.path().join("panel.csv");
    let indicators_path = dir.path().join("indicators.csv");
    fs::write(
        &panel_path,
        "fiscal_year,indicator_id,value\n\
         2016,A,1.0\n2017,A,2.0\n\
         2016,B,3.0\n2017,B,5.0\n\
         2016,C,0.5\n2017,C,0.25\n\
         2016,D,9.0\n2017,D,8.0\n",
    )
    .unwrap();
    fs::write(
        &indicators_path,
        "indicator_id,sector,polarity,within_weight,units,display_name\n\
         A,RS,positive,1.0,fraction,A\n\
         B,FS,positive,1.0,fraction,B\n\
         C,ES,negative,1.0,fraction,C\n\
         D,MS,positive,1.0,fraction,D\n",
    )
    .unwrap();
    let output = afsi(&[
        "stats",
        "--panel",
        &panel_path.to_string_lossy(),
        "--indicators",
        &indicators_path.to_string_lossy(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let stdout = stdout_of(&output);
    let line = stdout.lines().find(|l| l.starts_with("A ")).unwrap();
    assert!(line.trim_end().ends_with(" 2"), "{line}");
}

#[test]
fn whatif_zero_delta_prints_zeros() {
    let output = afsi_on_data(
        "whatif",
        &["--indicator", "PLR", "--year", "2024", "--delta", "0"],
    );
    assert_eq!(output.status.code(), Some(0));
    let stdout = stdout_of(&output);
    let recomputed = stdout.lines().find(|l| l.starts_with("recomputed")).unwrap();
    assert!(recomputed.contains("+0.000000000000e0"), "{recomputed}");
}

#[test]
fn whatif_negative_delta_on_positive_indicator_prints_negative_change() {
    let dir = tempfile::tempdir().unwrap();
    let output = afsi_on_data(
        "whatif",
        &[
            "--indicator",
            "PLR",
            "--year",
            "2024",
            "--delta",
            "-0.01",
            "--out-dir",
            &dir.path().to_string_lossy(),
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("whatif.csv")).unwrap();
    let row = csv.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    let delta_afsi: f64 = fields[4].parse().unwrap();
    assert!(delta_afsi < 0.0, "{row}");
    // recomputed and closed form agree to well under 1e-9
    let predicted: f64 = fields[6].parse().unwrap();
    assert!((delta_afsi - predicted).abs() < 1e-9);
}

#[test]
fn whatif_unknown_indicator_exits_one() {
    let output = afsi_on_data(
        "whatif",
        &["--indicator", "NOPE", "--year", "2024", "--delta", "0.1"],
    );
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("unknown indicator"));
}

#[test]
fn flat_settings_with_flat_registry_compute() {
    let dir = tempfile::tempdir().unwrap();
    let settings = dir.path().join("settings.cfg");
    fs::write(&settings, "weighting_mode=flat\n").unwrap();
    let output = afsi(&[
        "compute",
        "--panel",
        &data_dir().join("panel.csv").to_string_lossy(),
        "--indicators",
        &data_dir().join("indicators_flat.csv").to_string_lossy(),
        "--settings",
        &settings.to_string_lossy(),
        "--out-dir",
        &dir.path().join("out").to_string_lossy(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
}

#[test]
fn sector_settings_with_flat_registry_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    let output = afsi(&[
        "compute",
        "--panel",
        &data_dir().join("panel.csv").to_string_lossy(),
        "--indicators",
        &data_dir().join("indicators_flat.csv").to_string_lossy(),
        "--out-dir",
        &dir.path().join("out").to_string_lossy(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("within-weights"));
}

#[test]
fn standardize_after_whatif_reports_no_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let settings = dir.path().join("settings.cfg");
    fs::write(&settings, "aggregation_order=standardize_after\n").unwrap();
    let output = afsi_on_data(
        "whatif",
        &[
            "--settings",
            &settings.to_string_lossy(),
            "--indicator",
            "PLR",
            "--year",
            "2024",
            "--delta",
            "-0.01",
        ],
    );
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    assert!(stdout_of(&output).contains("n/a"));
}
