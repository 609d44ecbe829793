//! End-to-end driver: configuration, data ingestion, the staged run and
//! report rendering.

mod config;
mod fetch;
mod render;
mod run;

pub use config::{
    canonical_variable, parse_ordering, DataSource, LagChoice, OutputFormat, PipelineConfig,
    Transform, VARIABLES,
};
pub use fetch::{
    country_code, fetch_indicators, parse_country_csv, parse_worldbank, read_country_csv,
    read_hdi_long, worldbank_url, CachedFetcher, HttpGet, UreqClient,
};
pub use render::{fmt_p, fmt_stat, parse_json_report, render_report, Document};
pub use run::{
    country_seed, holdout_forecast, run_country, run_country_scoped, run_pipeline,
    run_pipeline_scoped, run_pipeline_with, CountryReport, DataSummary, ForecastEval,
    JohansenSection, Provenance, RunReport, RunScope, Section, StructuralSection, VarSection,
    NOT_REQUESTED,
};
