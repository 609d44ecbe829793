//! Cholesky impulse responses with Monte Carlo bands, and the forecast-error
//! variance decomposition.
//!
//!     cargo run --example impulse_responses

use std::path::PathBuf;

use macrovar::align_panel;
use macrovar::pipeline::read_country_csv;
use macrovar::structural::{impulse_responses, irf_confidence_bands, variance_decomposition};
use macrovar::var::{estimate_var, VarSpec};

fn main() -> macrovar::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures/pakistan.csv");
    let panel = align_panel(read_country_csv(&path, "pakistan")?.variables().to_vec())?;
    let est = estimate_var(&panel, VarSpec::new(2))?;
    let ordering = [0, 1, 2];
    let horizon = 10;

    let irf = impulse_responses(&est, horizon, &ordering)?;
    if let Some(w) = &irf.warning {
        println!("warning: {w}");
    }
    let bands = irf_confidence_bands(&est, horizon, &ordering, 500, 42)?;
    let (hdi, health) = (0, 1);
    println!(
        "response of {} to a {} shock ({}):",
        est.variables[hdi], est.variables[health], bands.method
    );
    for h in 0..=horizon {
        println!(
            "  h={h:>2} {:>10.6}  [{:>10.6}, {:>10.6}]",
            irf.irf[h][(hdi, health)],
            bands.lower[h][(hdi, health)],
            bands.upper[h][(hdi, health)]
        );
    }

    let fevd = variance_decomposition(&est, horizon, &ordering)?;
    let table = &fevd.tables[hdi];
    println!("\nvariance decomposition of {}:", table.variable);
    println!(
        "  {:>6} {:>10} {}",
        "period",
        "S.E.",
        fevd.variables.join("  ")
    );
    for r in &table.rows {
        let shares: Vec<String> = r.shares.iter().map(|s| format!("{s:>8.4}")).collect();
        println!("  {:>6} {:>10.6} {}", r.period, r.se, shares.join(" "));
    }
    Ok(())
}
