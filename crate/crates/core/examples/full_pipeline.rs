//! Runs every stage for the countries in a config file and prints the
//! markdown report.
//!
//!     cargo run --example full_pipeline [-- config.toml]

use std::path::PathBuf;

use macrovar::pipeline::{render_report, run_pipeline, OutputFormat, PipelineConfig};

fn main() -> macrovar::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/example.toml"));
    let cfg = PipelineConfig::from_file(&path)?;
    let report = run_pipeline(&cfg)?;
    print!("{}", render_report(&report, OutputFormat::Markdown).main());
    for c in &report.countries {
        if let Some(s) = c.stability.result() {
            eprintln!("{}: max root modulus {:.6}", c.country, s.max_modulus());
        }
    }
    Ok(())
}
