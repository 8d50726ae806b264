use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use afsi_cli::commands;

/// Composite financial stability index toolkit: builds four sector
/// sub-indices and their weighted composite from an annual indicator panel.
#[derive(Parser)]
#[command(name = "afsi", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Panel CSV: fiscal_year,indicator_id,value
    #[arg(long, value_name = "PATH")]
    panel: PathBuf,
    /// Indicator registry CSV:
    /// indicator_id,sector,polarity,within_weight,units,display_name
    #[arg(long, value_name = "PATH")]
    indicators: PathBuf,
    /// Optional key=value settings file; omitted keys take the documented
    /// defaults
    #[arg(long, value_name = "PATH")]
    settings: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the sub-indices and composite; write CSV tables and SVG charts
    Compute {
        #[command(flatten)]
        input: InputArgs,
        /// Directory for indices.csv, stats.csv, flags.csv and the five charts
        #[arg(long, value_name = "PATH")]
        out_dir: PathBuf,
    },
    /// Print per-indicator mean, standard deviation and observation count
    Stats {
        #[command(flatten)]
        input: InputArgs,
        /// Also write stats.csv here
        #[arg(long, value_name = "PATH")]
        out_dir: Option<PathBuf>,
    },
    /// Check the registry and panel without computing anything
    Validate {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Perturb one observation under frozen statistics and report the change
    Whatif {
        #[command(flatten)]
        input: InputArgs,
        /// Indicator to perturb
        #[arg(long, value_name = "ID")]
        indicator: String,
        /// Fiscal year of the cell to perturb
        #[arg(long, value_name = "YEAR")]
        year: i32,
        /// Raw-unit change to apply
        #[arg(long, value_name = "D", allow_hyphen_values = true)]
        delta: f64,
        /// Write whatif.csv here
        #[arg(long, value_name = "PATH")]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute { input, out_dir } => commands::run_compute(
            &input.panel,
            &input.indicators,
            input.settings.as_deref(),
            out_dir,
        ),
        Command::Stats { input, out_dir } => commands::run_stats(
            &input.panel,
            &input.indicators,
            input.settings.as_deref(),
            out_dir.as_deref(),
        ),
        Command::Validate { input } => commands::run_validate(
            &input.panel,
            &input.indicators,
            input.settings.as_deref(),
        ),
        Command::Whatif {
            input,
            indicator,
            year,
            delta,
            out_dir,
        } => commands::run_whatif(
            &input.panel,
            &input.indicators,
            input.settings.as_deref(),
            indicator,
            *year,
            *delta,
            out_dir.as_deref(),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}
