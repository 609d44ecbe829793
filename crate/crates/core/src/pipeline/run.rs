use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{LagChoice, PipelineConfig, Transform};
use super::fetch::{fetch_indicators, HttpGet, UreqClient};
use crate::diagnostics::{
    granger_wald, residual_cross_correlations, serial_correlation_lm, stability_roots,
    CrossCorrResult, LmResult, StabilityResult, WaldBlockResult,
};
use crate::error::{Error, Result};
use crate::series::{align_panel, CountryPanel};
use crate::stationarity::{
    adf_test, johansen_test_labeled, AdfOptions, AdfResult, JohansenDeterministic, JohansenInput,
    JohansenResult, LagRule,
};
use crate::structural::{irf_confidence_bands, IrfBands, StructuralSet};
use crate::var::{estimate_var, select_lag_order, LagSelection, VarEstimate, VarSpec};

/// A report section: either computed or skipped with the reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Section<T> {
    Done { result: T },
    Skipped { reason: String },
}

impl<T> Section<T> {
    pub fn result(&self) -> Option<&T> {
        match self {
            Section::Done { result } => Some(result),
            Section::Skipped { .. } => None,
        }
    }

    pub fn skip_reason(&self) -> Option<&str> {
        match self {
            Section::Done { .. } => None,
            Section::Skipped { reason } => Some(reason),
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Section::Skipped {
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataSummary {
    pub first_year: i32,
    pub last_year: i32,
    pub n_obs: usize,
    /// Interior cells filled by linear interpolation, per variable.
    pub interpolated: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JohansenSection {
    pub result: JohansenResult,
    pub caveat: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarSection {
    pub transform: Transform,
    pub lag_order: usize,
    /// Criteria that picked the lag when `lag_order = "auto"`.
    pub selected_by: Option<Vec<String>>,
    pub header: String,
    pub estimate: VarEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuralSection {
    pub horizon: usize,
    pub ordering: Vec<String>,
    pub set: StructuralSet,
    pub bands: Option<IrfBands>,
}

/// Hold-out forecast accuracy (non-normative).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastEval {
    pub holdout: usize,
    pub lag_order: usize,
    pub variables: Vec<String>,
    pub rmse: Vec<f64>,
    pub mae: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountryReport {
    pub country: String,
    pub seed: u64,
    pub data: Section<DataSummary>,
    pub adf_levels: Section<Vec<AdfResult>>,
    pub adf_differences: Section<Vec<AdfResult>>,
    pub johansen: Section<JohansenSection>,
    pub lag_selection: Section<LagSelection>,
    pub var: Section<VarSection>,
    pub granger: Section<Vec<WaldBlockResult>>,
    pub stability: Section<StabilityResult>,
    pub cross_correlations: Section<CrossCorrResult>,
    pub lm: Section<LmResult>,
    pub structural: Section<StructuralSection>,
    pub forecast: Section<ForecastEval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    /// Files read or URLs requested, in country order.
    pub inputs: Vec<String>,
    pub config: PipelineConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub provenance: Provenance,
    pub countries: Vec<CountryReport>,
}

/// Per-country seed: SplitMix64 of the run seed mixed with an FNV-1a hash of
/// the country name, so seeds do not depend on list order or scheduling.
pub fn country_seed(seed: u64, country: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in country.to_ascii_lowercase().bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut z = (seed ^ h).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Runs every configured country against the live network (subject to
/// `offline` and the fetch cache).
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<RunReport> {
    run_pipeline_with(cfg, &UreqClient::default())
}

pub fn run_pipeline_with(cfg: &PipelineConfig, http: &dyn HttpGet) -> Result<RunReport> {
    run_pipeline_scoped(cfg, http, RunScope::Full)
}

pub fn run_pipeline_scoped(
    cfg: &PipelineConfig,
    http: &dyn HttpGet,
    scope: RunScope,
) -> Result<RunReport> {
    cfg.validate()?;
    let countries = cfg
        .countries
        .par_iter()
        .map(|c| run_country_scoped(cfg, c, http, scope))
        .collect::<Result<Vec<_>>>()?;
    let inputs = cfg
        .countries
        .iter()
        .map(|c| match cfg.data_source {
            super::config::DataSource::CsvDir => cfg
                .csv_dir
                .join(format!("{}.csv", c.to_ascii_lowercase()))
                .display()
                .to_string(),
            super::config::DataSource::WorldbankFetch => format!(
                "World Bank {} / {} for {c}; HDI from {}",
                cfg.health_indicator,
                cfg.edu_indicator,
                cfg.hdi_csv
                    .as_ref()
                    .map_or("-".into(), |p| p.display().to_string())
            ),
        })
        .collect();
    Ok(RunReport {
        provenance: Provenance {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs,
            config: cfg.clone(),
        },
        countries,
    })
}

/// Skip reason for sections outside the requested [`RunScope`]; renderers
/// leave such sections out entirely.
pub const NOT_REQUESTED: &str = "not requested";

/// Which stages to run. Stages outside the scope are skipped with
/// [`NOT_REQUESTED`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RunScope {
    #[default]
    Full,
    /// Ingest and unit-root tests.
    UnitRoot,
    /// Ingest, lag selection and VAR estimation.
    Var,
    /// [`RunScope::Var`] plus impulse responses and decompositions.
    Structural,
}

impl RunScope {
    fn wants(self, stage: &str) -> bool {
        const UNIT_ROOT: [&str; 4] = [
            "ingest",
            "ADF (levels)",
            "differencing",
            "ADF (differences)",
        ];
        const VAR: [&str; 4] = ["ingest", "differencing", "lag selection", "VAR estimation"];
        match self {
            RunScope::Full => true,
            RunScope::UnitRoot => UNIT_ROOT.contains(&stage),
            RunScope::Var => VAR.contains(&stage),
            RunScope::Structural => VAR.contains(&stage) || stage == "structural analysis",
        }
    }
}

struct Stages<'a> {
    country: &'a str,
    keep_going: bool,
    scope: RunScope,
}

impl Stages<'_> {
    fn run<T>(&self, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<Section<T>> {
        if !self.scope.wants(stage) {
            return Ok(Section::skipped(NOT_REQUESTED));
        }
        match f() {
            Ok(result) => Ok(Section::Done { result }),
            Err(e) if self.keep_going => Ok(Section::skipped(format!("{stage} failed: {e}"))),
            Err(e) => Err(Error::Stage {
                country: self.country.to_string(),
                stage: stage.to_string(),
                source: Box::new(e),
            }),
        }
    }

    /// Runs `f` on the result of an earlier section, or skips when that
    /// section was skipped.
    fn after<T, U>(
        &self,
        stage: &str,
        dep: &Section<U>,
        dep_name: &str,
        f: impl FnOnce(&U) -> Result<T>,
    ) -> Result<Section<T>> {
        match dep.result() {
            Some(u) => self.run(stage, || f(u)),
            None if !self.scope.wants(stage) => Ok(Section::skipped(NOT_REQUESTED)),
            None => Ok(Section::skipped(format!("{dep_name} unavailable"))),
        }
    }
}

fn adf_all(panel: &CountryPanel, opts: &AdfOptions) -> Result<Vec<AdfResult>> {
    panel
        .variables()
        .iter()
        .map(|s| adf_test(s, opts))
        .collect()
}

/// Runs one country through every stage.
pub fn run_country(
    cfg: &PipelineConfig,
    country: &str,
    http: &dyn HttpGet,
) -> Result<CountryReport> {
    run_country_scoped(cfg, country, http, RunScope::Full)
}

pub fn run_country_scoped(
    cfg: &PipelineConfig,
    country: &str,
    http: &dyn HttpGet,
    scope: RunScope,
) -> Result<CountryReport> {
    let st = Stages {
        country,
        keep_going: cfg.keep_going,
        scope,
    };
    let seed = country_seed(cfg.seed, country);
    let ordering = cfg.ordering_indices()?;

    let ingest = st.run("ingest", || {
        let raw = fetch_indicators(country, cfg, http)?;
        let panel = align_panel(raw.variables().to_vec())?
            .with_ordering(&ordering_names(&raw, &ordering))?;
        let interpolated = raw
            .variables()
            .iter()
            .map(|s| {
                let filled = (panel.start_year()..=panel.end_year())
                    .filter(|&y| s.get(y).is_none())
                    .count();
                (s.name().to_string(), filled)
            })
            .collect();
        let summary = DataSummary {
            first_year: panel.start_year(),
            last_year: panel.end_year(),
            n_obs: panel.nobs(),
            interpolated,
        };
        Ok((panel, summary))
    })?;
    let data = match &ingest {
        Section::Done { result } => Section::Done {
            result: result.1.clone(),
        },
        Section::Skipped { reason } => Section::skipped(reason.clone()),
    };
    let levels = match ingest {
        Section::Done { result } => Section::Done { result: result.0 },
        Section::Skipped { reason } => Section::skipped(reason),
    };

    let adf_opts = AdfOptions {
        max_lags: cfg.adf_max_lags,
        lag_rule: LagRule::Schwarz,
    };
    let adf_levels = st.after("ADF (levels)", &levels, "data", |p| adf_all(p, &adf_opts))?;
    let diffs = st.after("differencing", &levels, "data", CountryPanel::difference)?;
    let adf_differences = st.after("ADF (differences)", &diffs, "differenced data", |p| {
        adf_all(p, &adf_opts)
    })?;

    let (joh_panel, joh_input) = match cfg.johansen_on {
        Transform::Levels => (&levels, JohansenInput::Levels),
        Transform::Differences => (&diffs, JohansenInput::Differences),
    };
    let johansen = st.after("Johansen", joh_panel, "data", |p| {
        let result = johansen_test_labeled(
            p,
            cfg.johansen_lags,
            JohansenDeterministic::InterceptNoTrend,
            joh_input,
        )?;
        let caveat = johansen_caveat(cfg, adf_differences.result());
        Ok(JohansenSection { result, caveat })
    })?;

    let est_panel = match cfg.estimate_on {
        Transform::Levels => &levels,
        Transform::Differences => &diffs,
    };
    let lag_selection = st.after("lag selection", est_panel, "data", |p| {
        select_lag_order(p, cfg.max_lag_search)
    })?;

    let var = st.after("VAR estimation", est_panel, "data", |p| {
        let (lag, selected_by) = match cfg.lag_order {
            LagChoice::Fixed(l) => (l, None),
            LagChoice::Auto => {
                let sel = lag_selection.result().ok_or_else(|| {
                    Error::InsufficientData(
                        "lag_order = \"auto\" but lag selection was skipped".into(),
                    )
                })?;
                let (l, by) = sel.consensus();
                (
                    l.max(1),
                    Some(by.into_iter().map(String::from).collect::<Vec<_>>()),
                )
            }
        };
        let estimate = estimate_var(p, VarSpec::new(lag))?;
        let transform = match cfg.estimate_on {
            Transform::Levels => "levels",
            Transform::Differences => "first differences",
        };
        let header = match &selected_by {
            Some(by) if by.is_empty() => {
                format!("VAR({lag}) in {transform}; no criterion chose a positive lag, using 1")
            }
            Some(by) => format!(
                "VAR({lag}) in {transform}; lag selected by {}",
                by.join(", ")
            ),
            None => format!("VAR({lag}) in {transform}; lag fixed by configuration"),
        };
        Ok(VarSection {
            transform: cfg.estimate_on,
            lag_order: lag,
            selected_by,
            header,
            estimate,
        })
    })?;

    let granger = st.after("Granger causality", &var, "VAR", |v| {
        granger_wald(&v.estimate)
    })?;
    let stability = st.after("stability", &var, "VAR", |v| {
        Ok(stability_roots(&v.estimate))
    })?;
    let cross_correlations = st.after("cross-correlations", &var, "VAR", |v| {
        residual_cross_correlations(&v.estimate, cfg.cross_corr_max_lag)
    })?;
    let lm = st.after("LM test", &var, "VAR", |v| {
        serial_correlation_lm(&v.estimate, cfg.lm_max_lag)
    })?;
    let structural = st.after("structural analysis", &var, "VAR", |v| {
        let set = StructuralSet::compute(&v.estimate, cfg.horizon, &ordering)?;
        let bands = if cfg.irf_band_draws > 0 {
            Some(irf_confidence_bands(
                &v.estimate,
                cfg.horizon,
                &ordering,
                cfg.irf_band_draws,
                seed,
            )?)
        } else {
            None
        };
        Ok(StructuralSection {
            horizon: cfg.horizon,
            ordering: ordering
                .iter()
                .map(|&i| v.estimate.variables[i].clone())
                .collect(),
            set,
            bands,
        })
    })?;
    let forecast = match (est_panel.result(), var.result()) {
        (Some(p), Some(v)) => st.run("forecast evaluation", || {
            holdout_forecast(p, v.lag_order, cfg.holdout)
        })?,
        _ if !scope.wants("forecast evaluation") => Section::skipped(NOT_REQUESTED),
        _ => Section::skipped("VAR unavailable"),
    };

    Ok(CountryReport {
        country: country.to_string(),
        seed,
        data,
        adf_levels,
        adf_differences,
        johansen,
        lag_selection,
        var,
        granger,
        stability,
        cross_correlations,
        lm,
        structural,
        forecast,
    })
}

fn ordering_names(panel: &CountryPanel, ordering: &[usize]) -> Vec<String> {
    let names = panel.names();
    ordering.iter().map(|&i| names[i].clone()).collect()
}

fn johansen_caveat(cfg: &PipelineConfig, adf_diff: Option<&Vec<AdfResult>>) -> Option<String> {
    let mut notes = Vec::new();
    if cfg.johansen_on == Transform::Differences {
        notes.push(
            "Test run on first differences to follow the study's wording; Johansen's procedure \
             assumes I(1) levels, so these statistics do not test cointegration in levels.",
        );
    }
    if cfg.estimate_on == Transform::Differences {
        if adf_diff.is_some_and(|r| r.iter().all(AdfResult::stationary)) {
            notes.push(
                "All differenced series are stationary and the VAR is estimated in first \
                 differences; any long-run relation found in levels is not imposed on the model.",
            );
        } else {
            notes.push(
                "The VAR is estimated in first differences; any long-run relation found in levels \
                 is not imposed on the model.",
            );
        }
    }
    (!notes.is_empty()).then(|| notes.join(" "))
}

/// Re-estimates on all but the last `holdout` observations and scores the
/// dynamic forecast against them.
pub fn holdout_forecast(panel: &CountryPanel, lag: usize, holdout: usize) -> Result<ForecastEval> {
    if holdout == 0 {
        return Err(Error::InvalidInput("holdout must be at least 1".into()));
    }
    let n = panel.nobs();
    if n <= holdout {
        return Err(Error::InsufficientObservations(format!(
            "{n} observations cannot hold out {holdout}"
        )));
    }
    let train = panel.window(panel.start_year(), panel.end_year() - holdout as i32)?;
    let est = estimate_var(&train, VarSpec::new(lag))?;
    let path = est.forecast(holdout);
    let actual = panel.matrix()?;
    let k = panel.nvars();
    let mut rmse = vec![0.0; k];
    let mut mae = vec![0.0; k];
    for (h, f) in path.iter().enumerate() {
        for i in 0..k {
            let e = actual[(n - holdout + h, i)] - f[i];
            rmse[i] += e * e;
            mae[i] += e.abs();
        }
    }
    let h = holdout as f64;
    Ok(ForecastEval {
        holdout,
        lag_order: lag,
        variables: panel.names(),
        rmse: rmse.into_iter().map(|s| (s / h).sqrt()).collect(),
        mae: mae.into_iter().map(|s| s / h).collect(),
    })
}
