//! Information-criterion lag selection on a common sample.
//!
//!     cargo run --example lag_selection

use std::path::PathBuf;

use macrovar::align_panel;
use macrovar::pipeline::read_country_csv;
use macrovar::var::select_lag_order;

fn main() -> macrovar::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures/bangladesh.csv");
    let panel = align_panel(read_country_csv(&path, "bangladesh")?.variables().to_vec())?;
    let sel = select_lag_order(&panel, 3)?;
    let s = sel.starred;
    let star = |lag: usize, chosen: usize| if lag == chosen { "*" } else { " " };

    println!("common sample: {} observations", sel.n_obs);
    println!(
        "{:>3} {:>12} {:>11} {:>13} {:>11} {:>11} {:>11}",
        "lag", "logL", "LR", "FPE", "AIC", "SC", "HQ"
    );
    for r in &sel.rows {
        let lr = r.lr.map_or("-".to_string(), |v| format!("{v:.4}"));
        println!(
            "{:>3} {:>12.4} {:>10}{} {:>12.4e}{} {:>10.4}{} {:>10.4}{} {:>10.4}{}",
            r.lag,
            r.log_l,
            lr,
            star(r.lag, s.lr),
            r.fpe,
            star(r.lag, s.fpe),
            r.aic,
            star(r.lag, s.aic),
            r.sc,
            star(r.lag, s.sc),
            r.hq,
            star(r.lag, s.hq)
        );
    }
    let (lag, by) = sel.consensus();
    println!("consensus lag {lag} (chosen by {})", by.join(", "));
    Ok(())
}
