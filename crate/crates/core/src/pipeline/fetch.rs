//! Data ingestion: per-country CSV files and a cached World Bank client.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde_json::Value;

use super::config::{DataSource, PipelineConfig, VARIABLES};
use crate::error::{Error, Result};
use crate::series::{AnnualSeries, CountryPanel};

/// Reads `year,hdi,gov_exp_health,gov_exp_edu` (any column order, extra
/// columns ignored). Empty cells are missing values; years must be
/// consecutive.
pub fn read_country_csv(path: &Path, country: &str) -> Result<CountryPanel> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_country_csv(&text, country)
}

pub fn parse_country_csv(text: &str, country: &str) -> Result<CountryPanel> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| Error::Malformed(e.to_string()))?
        .clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let year_col = col("year")?;
    let cols = VARIABLES
        .iter()
        .map(|v| col(v))
        .collect::<Result<Vec<_>>>()?;

    let mut years = Vec::new();
    let mut values: Vec<Vec<Option<f64>>> = vec![Vec::new(); VARIABLES.len()];
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Malformed(e.to_string()))?;
        let row = line + 2;
        let year: i32 = rec
            .get(year_col)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Malformed(format!("row {row}: bad year")))?;
        if let Some(prev) = years.last() {
            if year != prev + 1 {
                return Err(Error::Malformed(format!(
                    "row {row}: year {year} does not follow {prev}"
                )));
            }
        }
        years.push(year);
        for (v, &c) in cols.iter().enumerate() {
            let cell = rec.get(c).unwrap_or("");
            let value = if cell.is_empty() {
                None
            } else {
                Some(cell.parse::<f64>().map_err(|_| {
                    Error::Malformed(format!(
                        "row {row}: `{cell}` in column {} is not a number",
                        VARIABLES[v]
                    ))
                })?)
            };
            values[v].push(value.filter(|x| x.is_finite()));
        }
    }
    let start = *years
        .first()
        .ok_or_else(|| Error::InsufficientData(format!("no rows for `{country}`")))?;
    let series = VARIABLES
        .iter()
        .zip(values)
        .map(|(name, vals)| AnnualSeries::new(*name, country, start, vals))
        .collect::<Result<Vec<_>>>()?;
    CountryPanel::new(country, series, (0..VARIABLES.len()).collect())
}

/// Minimal HTTP GET abstraction so the network can be swapped out in tests.
pub trait HttpGet: Sync {
    fn get(&self, url: &str) -> std::result::Result<String, String>;
}

/// Blocking client backed by `ureq`.
pub struct UreqClient {
    agent: ureq::Agent,
}

impl Default for UreqClient {
    fn default() -> Self {
        let config = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(30)))
            .build();
        Self {
            agent: config.into(),
        }
    }
}

impl HttpGet for UreqClient {
    fn get(&self, url: &str) -> std::result::Result<String, String> {
        self.agent
            .get(url)
            .call()
            .map_err(|e| e.to_string())?
            .body_mut()
            .read_to_string()
            .map_err(|e| e.to_string())
    }
}

/// GET with an on-disk cache keyed by URL. Cache hits never touch the
/// network; in offline mode a miss is an error and the client is never
/// called.
pub struct CachedFetcher<'a> {
    pub http: &'a dyn HttpGet,
    pub cache_dir: PathBuf,
    pub offline: bool,
    pub retries: u32,
}

impl CachedFetcher<'_> {
    pub fn cache_path(&self, url: &str) -> PathBuf {
        let name: String = url
            .trim_start_matches("https://")
            .trim_start_matches("http://")
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '.' || c == '-' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        self.cache_dir.join(format!("{name}.json"))
    }

    pub fn get(&self, url: &str) -> Result<String> {
        let path = self.cache_path(url);
        if let Ok(body) = std::fs::read_to_string(&path) {
            return Ok(body);
        }
        if self.offline {
            return Err(Error::Offline(url.to_string()));
        }
        let attempts = self.retries.max(1);
        let mut last = String::new();
        for attempt in 1..=attempts {
            match self.http.get(url) {
                Ok(body) => {
                    let io = |source| Error::Io {
                        path: path.display().to_string(),
                        source,
                    };
                    std::fs::create_dir_all(&self.cache_dir).map_err(io)?;
                    std::fs::write(&path, &body).map_err(io)?;
                    return Ok(body);
                }
                Err(e) => last = e,
            }
            if attempt < attempts {
                std::thread::sleep(Duration::from_millis(250 * u64::from(attempt)));
            }
        }
        Err(Error::Http {
            url: url.to_string(),
            attempts,
            message: last,
        })
    }
}

pub fn worldbank_url(country_code: &str, indicator: &str, start: i32, end: i32) -> String {
    format!(
        "https://api.worldbank.org/v2/country/{country_code}/indicator/{indicator}?format=json&per_page=1000&date={start}:{end}"
    )
}

/// Parses the indicators API response `[meta, [{"date": "2020", "value": 1.2}, ..]]`.
pub fn parse_worldbank(body: &str) -> Result<BTreeMap<i32, f64>> {
    let v: Value = serde_json::from_str(body).map_err(|e| Error::Malformed(e.to_string()))?;
    let rows = v
        .get(1)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("World Bank response has no data array".into()))?;
    let mut out = BTreeMap::new();
    for row in rows {
        let year = row
            .get("date")
            .and_then(Value::as_str)
            .and_then(|d| d.parse::<i32>().ok())
            .ok_or_else(|| Error::MissingColumn("date".into()))?;
        if let Some(x) = row.get("value").and_then(Value::as_f64) {
            out.insert(year, x);
        }
    }
    Ok(out)
}

/// ISO3 code for the countries the bundled data covers; other names must be
/// given as codes.
pub fn country_code(country: &str) -> Result<String> {
    let code = match country.to_ascii_lowercase().as_str() {
        "bangladesh" => "BGD",
        "india" => "IND",
        "pakistan" => "PAK",
        c if c.len() == 3 && c.chars().all(|ch| ch.is_ascii_alphabetic()) => {
            return Ok(c.to_ascii_uppercase())
        }
        _ => {
            return Err(Error::Config(format!(
                "no country code known for `{country}`; use its ISO3 code"
            )))
        }
    };
    Ok(code.to_string())
}

/// Reads `country,year,hdi` rows for one country (matched by name or code).
pub fn read_hdi_long(path: &Path, country: &str) -> Result<BTreeMap<i32, f64>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = rdr
        .headers()
        .map_err(|e| Error::Malformed(e.to_string()))?
        .clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let (c_col, y_col, h_col) = (col("country")?, col("year")?, col("hdi")?);
    let code = country_code(country).ok();
    let mut out = BTreeMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Malformed(e.to_string()))?;
        let who = rec.get(c_col).unwrap_or("");
        if !(who.eq_ignore_ascii_case(country)
            || code.as_deref().is_some_and(|c| who.eq_ignore_ascii_case(c)))
        {
            continue;
        }
        let year = rec.get(y_col).and_then(|s| s.parse().ok());
        let hdi = rec.get(h_col).and_then(|s| s.parse::<f64>().ok());
        if let (Some(y), Some(h)) = (year, hdi) {
            out.insert(y, h);
        }
    }
    Ok(out)
}

fn series_from_map(
    name: &str,
    country: &str,
    start: i32,
    end: i32,
    map: &BTreeMap<i32, f64>,
) -> Result<AnnualSeries> {
    let values = (start..=end).map(|y| map.get(&y).copied()).collect();
    AnnualSeries::new(name, country, start, values)
}

/// Raw (unaligned, gaps preserved) panel for one country.
pub fn fetch_indicators(
    country: &str,
    cfg: &PipelineConfig,
    http: &dyn HttpGet,
) -> Result<CountryPanel> {
    match cfg.data_source {
        DataSource::CsvDir => {
            let path = cfg
                .csv_dir
                .join(format!("{}.csv", country.to_ascii_lowercase()));
            read_country_csv(&path, country)
        }
        DataSource::WorldbankFetch => {
            let hdi_path = cfg
                .hdi_csv
                .as_ref()
                .ok_or_else(|| Error::Config("worldbank_fetch needs hdi_csv".into()))?;
            let code = country_code(country)?;
            let fetcher = CachedFetcher {
                http,
                cache_dir: cfg.cache_dir.clone(),
                offline: cfg.offline,
                retries: cfg.http_retries,
            };
            let (start, end) = (cfg.start_year, cfg.end_year);
            let hdi = read_hdi_long(hdi_path, country)?;
            let health = parse_worldbank(&fetcher.get(&worldbank_url(
                &code,
                &cfg.health_indicator,
                start,
                end,
            ))?)?;
            let edu = parse_worldbank(&fetcher.get(&worldbank_url(
                &code,
                &cfg.edu_indicator,
                start,
                end,
            ))?)?;
            let series = vec![
                series_from_map(VARIABLES[0], country, start, end, &hdi)?,
                series_from_map(VARIABLES[1], country, start, end, &health)?,
                series_from_map(VARIABLES[2], country, start, end, &edu)?,
            ];
            CountryPanel::new(country, series, vec![0, 1, 2])
        }
    }
}
