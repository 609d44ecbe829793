//! Least-squares VAR estimation with per-equation statistics.
//!
//!     cargo run --example var_estimation

use std::path::PathBuf;

use macrovar::align_panel;
use macrovar::pipeline::read_country_csv;
use macrovar::var::{estimate_var, VarSpec};

fn main() -> macrovar::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures/pakistan.csv");
    let panel = align_panel(read_country_csv(&path, "pakistan")?.variables().to_vec())?;
    let est = estimate_var(&panel, VarSpec::new(2))?;

    println!(
        "VAR({}) on {} observations from {}",
        est.lag_order(),
        est.n_obs(),
        est.start_year
    );
    for eq in &est.per_equation {
        println!("\nequation {}", eq.dependent);
        for row in &eq.coef_table {
            println!(
                "  {:<22} {:>14.6} ({:>12.6}) [{:>8.4}]",
                row.name, row.coefficient, row.std_error, row.t_stat
            );
        }
        println!(
            "  R2 {:.4}  adj. R2 {:.4}  SSR {:.6}  S.E. {:.6}  F {:.4}  logL {:.4}",
            eq.r_squared, eq.adj_r_squared, eq.ssr, eq.se_equation, eq.f_stat, eq.log_likelihood
        );
    }
    if let Some(ll) = est.log_likelihood {
        println!("\nsystem log-likelihood {ll:.4}");
    }
    let next = est.forecast(3);
    println!(
        "3-step forecast: {:?}",
        next.iter()
            .map(|v| v.as_slice().to_vec())
            .collect::<Vec<_>>()
    );
    Ok(())
}
