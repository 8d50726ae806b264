//! Library surface of the command-line tool: chart rendering, CSV reporting,
//! and the command implementations the binary dispatches to.

pub mod chart;
pub mod commands;
pub mod report;

pub use chart::{emit_svg, ChartError, ChartSpec};
pub use commands::CliError;
