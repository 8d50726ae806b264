//! Regenerate the bundled example dataset under `data/` (or a directory given
//! as the first argument):
//!
//! ```text
//! cargo run -p afsi-cli --example export_reference_data [DIR]
//! ```

use std::fs;
use std::path::PathBuf;

use afsi_cli::report::{write_panel_csv, write_registry_csv};
use afsi_core::dataset;

const SETTINGS: &str = "\
# Index construction settings. Every key is optional; omitted keys take
# these defaults.
weighting_mode=sector
aggregation_order=normalize_first
normalization=zscore
std_mode=sample
sector_weight.RS=0.15
sector_weight.FS=0.15
sector_weight.ES=0.30
sector_weight.MS=0.40
";

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"));
    fs::create_dir_all(&dir)?;

    fs::write(dir.join("panel.csv"), write_panel_csv(&dataset::reference_panel()))?;
    fs::write(
        dir.join("indicators.csv"),
        write_registry_csv(&dataset::reference_registry()),
    )?;
    fs::write(
        dir.join("indicators_flat.csv"),
        write_registry_csv(&dataset::reference_flat_registry()),
    )?;
    fs::write(dir.join("settings.cfg"), SETTINGS)?;

    println!("wrote panel.csv, indicators.csv, indicators_flat.csv, settings.cfg to {}", dir.display());
    Ok(())
}
