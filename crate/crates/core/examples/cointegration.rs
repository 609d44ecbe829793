//! Johansen trace and maximum-eigenvalue tests on a panel in levels.
//!
//!     cargo run --example cointegration

use std::path::PathBuf;

use macrovar::align_panel;
use macrovar::pipeline::read_country_csv;
use macrovar::stationarity::{johansen_test, JohansenDeterministic, JohansenResult};

fn main() -> macrovar::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures/india.csv");
    let panel = align_panel(read_country_csv(&path, "india")?.variables().to_vec())?;
    let res = johansen_test(&panel, 1, JohansenDeterministic::InterceptNoTrend)?;

    println!(
        "{} observations, eigenvalues {:.4?}",
        res.n_obs, res.eigenvalues
    );
    println!(
        "{:<12} {:>10} {:>8} {:>8} {:>10} {:>8} {:>8}",
        "H0", "trace", "5% CV", "p", "max-eig", "5% CV", "p"
    );
    for r in 0..res.eigenvalues.len() {
        println!(
            "{:<12} {:>10.4} {:>8.3} {:>8.4} {:>10.4} {:>8.3} {:>8.4}  {}",
            JohansenResult::hypothesis_label(r),
            res.trace_stats[r],
            res.trace_cv_5pct[r],
            res.p_values_trace[r],
            res.max_eigen_stats[r],
            res.max_eigen_cv_5pct[r],
            res.p_values_max[r],
            res.interpretation(r),
        );
    }
    println!(
        "cointegrating rank (sequential trace test): {}",
        res.rank_decision
    );
    Ok(())
}
