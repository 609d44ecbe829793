use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use macrovar::pipeline::{
    canonical_variable, render_report, run_pipeline_scoped, DataSource, Document, LagChoice,
    OutputFormat, PipelineConfig, RunScope, UreqClient,
};
use macrovar::{Error, Result};

#[derive(Parser)]
#[command(
    name = "macrovar",
    version,
    about = "VAR analysis of annual country panels"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed for every stochastic step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Never touch the network; only the fetch cache is used.
    #[arg(long, global = true)]
    offline: bool,
    /// Skip failing stages and emit a partial report instead of aborting.
    #[arg(long, global = true)]
    keep_going: bool,
    /// markdown, csv or json.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Write the report files here instead of printing them.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline from a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Unit-root tests (levels and first differences) on one column.
    Adf {
        csv: PathBuf,
        #[arg(long, default_value = "hdi")]
        column: String,
        #[arg(long)]
        max_lags: Option<usize>,
    },
    /// Lag selection and VAR estimation.
    Var {
        csv: PathBuf,
        /// Lag order, or "auto".
        #[arg(long, default_value = "auto")]
        lags: String,
        #[arg(long, default_value_t = 3)]
        max_lag: usize,
    },
    /// Impulse responses, variance and historical decompositions.
    Irf {
        csv: PathBuf,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// Cholesky ordering, e.g. hdi,health,edu.
        #[arg(long, default_value = "hdi,health,edu", value_delimiter = ',')]
        ordering: Vec<String>,
        #[arg(long, default_value = "auto")]
        lags: String,
        #[arg(long, default_value_t = 1000)]
        draws: usize,
    },
}

fn parse_lags(s: &str) -> Result<LagChoice> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(LagChoice::Auto);
    }
    s.parse()
        .map(LagChoice::Fixed)
        .map_err(|_| Error::Config(format!("--lags must be an integer or auto, got `{s}`")))
}

/// Config for the single-file subcommands: the file stem is the country.
fn single_file_config(csv: &Path) -> Result<PipelineConfig> {
    let stem = csv
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Error::Config(format!("cannot derive a country from {}", csv.display())))?;
    if csv.extension().and_then(|e| e.to_str()) != Some("csv") || stem != stem.to_ascii_lowercase()
    {
        return Err(Error::Config(format!(
            "{} must be named <country>.csv in lower case",
            csv.display()
        )));
    }
    Ok(PipelineConfig {
        countries: vec![stem.to_string()],
        data_source: DataSource::CsvDir,
        csv_dir: csv
            .parent()
            .map_or_else(|| PathBuf::from("."), Path::to_path_buf),
        ..PipelineConfig::default()
    })
}

fn execute(cli: Cli) -> Result<(Document, Option<PathBuf>)> {
    let (mut cfg, scope, column, wanted): (PipelineConfig, RunScope, Option<String>, &[&str]) =
        match &cli.command {
            Command::Run { config } => (
                PipelineConfig::from_file(config)?,
                RunScope::Full,
                None,
                &[],
            ),
            Command::Adf {
                csv,
                column,
                max_lags,
            } => {
                let mut cfg = single_file_config(csv)?;
                cfg.adf_max_lags = *max_lags;
                let col = canonical_variable(column)
                    .ok_or_else(|| Error::MissingColumn(column.clone()))?;
                (cfg, RunScope::UnitRoot, Some(col.to_string()), &["adf.csv"])
            }
            Command::Var { csv, lags, max_lag } => {
                let mut cfg = single_file_config(csv)?;
                cfg.lag_order = parse_lags(lags)?;
                cfg.max_lag_search = *max_lag;
                (
                    cfg,
                    RunScope::Var,
                    None,
                    &[
                        "lag_selection.csv",
                        "var_coefficients.csv",
                        "var_equations.csv",
                    ],
                )
            }
            Command::Irf {
                csv,
                horizon,
                ordering,
                lags,
                draws,
            } => {
                let mut cfg = single_file_config(csv)?;
                cfg.horizon = *horizon;
                cfg.ordering = ordering.clone();
                cfg.lag_order = parse_lags(lags)?;
                cfg.irf_band_draws = *draws;
                (cfg, RunScope::Structural, None, &["irf.csv"])
            }
        };
    let common = &cli.common;
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    cfg.offline |= common.offline;
    cfg.keep_going |= common.keep_going;
    if let Some(f) = common.format {
        cfg.output_format = f;
    }
    cfg.validate()?;

    let mut report = run_pipeline_scoped(&cfg, &UreqClient::default(), scope)?;
    if let Some(col) = column {
        for c in &mut report.countries {
            for s in [&mut c.adf_levels, &mut c.adf_differences] {
                if let macrovar::pipeline::Section::Done { result } = s {
                    result.retain(|r| r.variable == col);
                }
            }
        }
    }
    let mut doc = render_report(&report, cfg.output_format);
    match cfg.output_format {
        OutputFormat::Csv if !wanted.is_empty() => doc
            .files
            .retain(|(name, _)| wanted.contains(&name.as_str())),
        OutputFormat::Markdown if matches!(scope, RunScope::UnitRoot | RunScope::Var) => {
            doc.files.truncate(1)
        }
        _ => {}
    }
    let out = common.out.clone().or(cfg.output_dir.clone());
    Ok((doc, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok((doc, Some(dir))) => match doc.write_to(&dir) {
            Ok(()) => {
                for (name, _) in &doc.files {
                    eprintln!("wrote {}", dir.join(name).display());
                }
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Ok((doc, None)) => {
            print!("{}", doc.to_single_text());
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
