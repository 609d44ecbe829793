//! Stability roots, residual cross-correlations and serial-correlation LM
//! tests.
//!
//!     cargo run --example stability_and_residuals

use std::path::PathBuf;

use macrovar::align_panel;
use macrovar::diagnostics::{residual_cross_correlations, serial_correlation_lm, stability_roots};
use macrovar::pipeline::read_country_csv;
use macrovar::var::{estimate_var, VarSpec};

fn main() -> macrovar::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures/india.csv");
    let panel = align_panel(read_country_csv(&path, "india")?.variables().to_vec())?;
    let est = estimate_var(&panel, VarSpec::new(2))?;

    let stab = stability_roots(&est);
    println!("roots of the characteristic polynomial:");
    for r in &stab.roots {
        println!(
            "  {:>10.6} {:+10.6}i   modulus {:.6}",
            r.re, r.im, r.modulus
        );
    }
    println!("stable: {}", stab.stable);

    let cc = residual_cross_correlations(&est, 4)?;
    println!(
        "\nresidual cross-correlations (band +/- {:.4}):",
        2.0 * cc.band
    );
    for (lag, m) in cc.by_lag.iter().enumerate() {
        let flat: Vec<String> = m.transpose().iter().map(|v| format!("{v:>7.3}")).collect();
        println!("  lag {lag}: {}", flat.join(" "));
    }

    let lm = serial_correlation_lm(&est, 3)?;
    println!("\nLM tests (no serial correlation at lag h):");
    for r in &lm.at_lag {
        println!(
            "  h={} LRE {:>9.4} df {:>2} p {:.4} | Rao F {:.4} df ({}, {:.1}) p {:.4}",
            r.lag, r.lre_stat, r.df, r.p_lre, r.rao_f, r.df_num, r.df_denom, r.p_rao
        );
    }
    Ok(())
}
