//! Augmented Dickey-Fuller tests on levels and first differences.
//!
//!     cargo run --example unit_root [-- path/to/country.csv]

use std::path::PathBuf;

use macrovar::align_panel;
use macrovar::pipeline::read_country_csv;
use macrovar::stationarity::{adf_test, AdfOptions};

fn main() -> macrovar::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures/bangladesh.csv")
        });
    let raw = read_country_csv(&path, "bangladesh")?;
    let levels = align_panel(raw.variables().to_vec())?;
    let diffs = levels.difference()?;
    let opts = AdfOptions::default();

    println!(
        "{:<18} {:>10} {:>8} {:>9} {:>9} {:>9} {:>5}  decision",
        "series", "t-stat", "p", "1%", "5%", "10%", "lags"
    );
    for panel in [&levels, &diffs] {
        for s in panel.variables() {
            let r = adf_test(s, &opts)?;
            let cv = r.critical_values;
            println!(
                "{:<18} {:>10.4} {:>8.4} {:>9.4} {:>9.4} {:>9.4} {:>5}  {}",
                r.variable,
                r.statistic,
                r.p_value,
                cv.one,
                cv.five,
                cv.ten,
                r.lags_used,
                r.interpretation()
            );
        }
    }
    Ok(())
}
