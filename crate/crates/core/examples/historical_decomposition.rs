//! Splits each observed series into a deterministic baseline and the
//! cumulative effect of every structural shock.
//!
//!     cargo run --example historical_decomposition

use std::path::PathBuf;

use macrovar::align_panel;
use macrovar::pipeline::read_country_csv;
use macrovar::structural::historical_decomposition;
use macrovar::var::{estimate_var, VarSpec};

fn main() -> macrovar::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures/bangladesh.csv");
    let panel = align_panel(read_country_csv(&path, "bangladesh")?.variables().to_vec())?;
    let est = estimate_var(&panel, VarSpec::new(2))?;
    let hd = historical_decomposition(&est, &[0, 1, 2])?;

    let p = &hd.paths[0];
    println!(
        "{}: actual = baseline + shock contributions ({})",
        p.variable,
        hd.variables.join(", ")
    );
    for (t, year) in hd.years.iter().enumerate() {
        let contrib: Vec<String> = p
            .contributions
            .iter()
            .map(|c| format!("{:>9.5}", c[t]))
            .collect();
        println!(
            "  {year} {:>8.4} = {:>8.4} + {}",
            p.actual[t],
            p.baseline[t],
            contrib.join(" + ")
        );
    }
    println!("largest identity error: {:.2e}", hd.max_identity_error());
    Ok(())
}
