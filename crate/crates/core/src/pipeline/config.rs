use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Canonical variable names, in the order the CSV files list them.
pub const VARIABLES: [&str; 3] = ["hdi", "gov_exp_health", "gov_exp_edu"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DataSource {
    /// One `<country>.csv` per country in `csv_dir`.
    #[default]
    CsvDir,
    /// World Bank indicators API for the spending series plus a local HDI file.
    WorldbankFetch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    #[default]
    Levels,
    Differences,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(Self::Markdown),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Config(format!("unknown output format `{other}`"))),
        }
    }
}

/// `lag_order = 2` or `lag_order = "auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LagChoice {
    Fixed(usize),
    #[default]
    Auto,
}

impl Serialize for LagChoice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LagChoice::Fixed(p) => s.serialize_u64(*p as u64),
            LagChoice::Auto => s.serialize_str("auto"),
        }
    }
}

impl<'de> Deserialize<'de> for LagChoice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(p) => Ok(LagChoice::Fixed(p as usize)),
            Raw::Str(s) if s.eq_ignore_ascii_case("auto") => Ok(LagChoice::Auto),
            Raw::Str(s) => s.parse().map(LagChoice::Fixed).map_err(|_| {
                serde::de::Error::custom(format!(
                    "lag_order must be an integer or \"auto\", got `{s}`"
                ))
            }),
        }
    }
}

/// Run configuration. Every key is optional; see the README for the schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub countries: Vec<String>,
    pub data_source: DataSource,
    /// Relative paths are resolved against the config file's directory.
    pub csv_dir: PathBuf,
    pub cache_dir: PathBuf,
    /// Long-format `country,year,hdi` file used with `worldbank_fetch`.
    pub hdi_csv: Option<PathBuf>,
    pub health_indicator: String,
    pub edu_indicator: String,
    pub start_year: i32,
    pub end_year: i32,
    pub http_retries: u32,
    pub offline: bool,

    pub estimate_on: Transform,
    pub lag_order: LagChoice,
    pub max_lag_search: usize,
    pub horizon: usize,
    pub ordering: Vec<String>,
    pub seed: u64,

    pub adf_max_lags: Option<usize>,
    pub johansen_on: Transform,
    pub johansen_lags: usize,
    pub lm_max_lag: usize,
    pub cross_corr_max_lag: usize,
    pub irf_band_draws: usize,
    pub holdout: usize,

    pub keep_going: bool,
    pub output_format: OutputFormat,
    pub output_dir: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            countries: vec!["bangladesh".into(), "india".into(), "pakistan".into()],
            data_source: DataSource::CsvDir,
            csv_dir: PathBuf::from("data"),
            cache_dir: PathBuf::from(".macrovar-cache"),
            hdi_csv: None,
            health_indicator: "SH.XPD.CHEX.GD.ZS".into(),
            edu_indicator: "SE.XPD.TOTL.GD.ZS".into(),
            start_year: 1990,
            end_year: 2024,
            http_retries: 3,
            offline: false,
            estimate_on: Transform::Levels,
            lag_order: LagChoice::Auto,
            max_lag_search: 3,
            horizon: 10,
            ordering: VARIABLES.iter().map(|s| s.to_string()).collect(),
            seed: 20240101,
            adf_max_lags: None,
            johansen_on: Transform::Levels,
            johansen_lags: 1,
            lm_max_lag: 3,
            cross_corr_max_lag: 12,
            irf_band_draws: 1000,
            holdout: 4,
            keep_going: false,
            output_format: OutputFormat::Markdown,
            output_dir: None,
        }
    }
}

impl PipelineConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file and resolves relative paths against its directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut cfg = Self::from_toml_str(&text)?;
        if let Some(base) = path.parent() {
            cfg.resolve_paths(base);
        }
        Ok(cfg)
    }

    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.csv_dir);
        fix(&mut self.cache_dir);
        if let Some(p) = self.hdi_csv.as_mut() {
            fix(p);
        }
        if let Some(p) = self.output_dir.as_mut() {
            fix(p);
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.countries.is_empty() {
            return Err(Error::Config("no countries configured".into()));
        }
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least 1".into()));
        }
        if self.max_lag_search == 0 {
            return Err(Error::Config("max_lag_search must be at least 1".into()));
        }
        if self.lag_order == LagChoice::Fixed(0) {
            return Err(Error::Config("lag_order must be at least 1".into()));
        }
        if self.start_year > self.end_year {
            return Err(Error::Config("start_year is after end_year".into()));
        }
        self.ordering_indices()?;
        Ok(())
    }

    /// Ordering as indices into [`VARIABLES`]; accepts `health` and `edu`
    /// as short names.
    pub fn ordering_indices(&self) -> Result<Vec<usize>> {
        parse_ordering(&self.ordering)
    }
}

/// Maps variable names (or the `health`/`edu` aliases) to indices into
/// [`VARIABLES`], requiring a permutation.
pub fn parse_ordering<S: AsRef<str>>(names: &[S]) -> Result<Vec<usize>> {
    let idx = names
        .iter()
        .map(|n| {
            canonical_variable(n.as_ref())
                .and_then(|c| VARIABLES.iter().position(|v| *v == c))
                .ok_or_else(|| {
                    Error::Config(format!("unknown variable `{}` in ordering", n.as_ref()))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    if sorted != (0..VARIABLES.len()).collect::<Vec<_>>() {
        return Err(Error::Config(format!(
            "ordering must list each of {} exactly once",
            VARIABLES.join(", ")
        )));
    }
    Ok(idx)
}

/// `health` -> `gov_exp_health`, `edu` -> `gov_exp_edu`; canonical names pass
/// through.
pub fn canonical_variable(name: &str) -> Option<&'static str> {
    match name.trim().to_ascii_lowercase().as_str() {
        "hdi" => Some("hdi"),
        "health" | "gov_exp_health" => Some("gov_exp_health"),
        "edu" | "education" | "gov_exp_edu" => Some("gov_exp_edu"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_config() {
        let cfg = PipelineConfig::from_toml_str(
            r#"
            countries = ["bangladesh"]
            lag_order = "auto"
            ordering = ["hdi", "health", "edu"]
            estimate_on = "differences"
            seed = 7
            "#,
        )
        .unwrap();
        assert_eq!(cfg.lag_order, LagChoice::Auto);
        assert_eq!(cfg.estimate_on, Transform::Differences);
        assert_eq!(cfg.ordering_indices().unwrap(), vec![0, 1, 2]);
        assert_eq!(cfg.horizon, 10);

        let fixed = PipelineConfig::from_toml_str("lag_order = 2").unwrap();
        assert_eq!(fixed.lag_order, LagChoice::Fixed(2));
    }

    #[test]
    fn rejects_bad_values() {
        assert!(PipelineConfig::from_toml_str("horizon = 0").is_err());
        assert!(PipelineConfig::from_toml_str("ordering = [\"hdi\", \"hdi\", \"edu\"]").is_err());
        assert!(PipelineConfig::from_toml_str("lag_order = \"many\"").is_err());
        assert!(PipelineConfig::from_toml_str("colour = 1").is_err());
    }

    #[test]
    fn round_trips_through_toml() {
        let cfg = PipelineConfig::default();
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(PipelineConfig::from_toml_str(&text).unwrap(), cfg);
    }
}
