//! Block-exogeneity Wald tests for every equation of a VAR.
//!
//!     cargo run --example granger_causality

use std::path::PathBuf;

use macrovar::align_panel;
use macrovar::diagnostics::granger_wald;
use macrovar::pipeline::read_country_csv;
use macrovar::var::{estimate_var, VarSpec};

fn main() -> macrovar::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures/bangladesh.csv");
    let panel = align_panel(read_country_csv(&path, "bangladesh")?.variables().to_vec())?;
    let est = estimate_var(&panel, VarSpec::new(2))?;

    println!(
        "{:<16} {:<16} {:>10} {:>3} {:>8}",
        "dependent", "excluded", "chi-sq", "df", "p"
    );
    for r in granger_wald(&est)? {
        let mark = if r.p_value < 0.05 {
            "  significant at 5%"
        } else {
            ""
        };
        println!(
            "{:<16} {:<16} {:>10.4} {:>3} {:>8.4}{mark}",
            r.dependent, r.excluded, r.chi_sq, r.df, r.p_value
        );
    }
    Ok(())
}
