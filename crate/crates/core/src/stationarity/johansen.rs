//! Johansen reduced-rank cointegration test (unrestricted intercept, no trend
//! in the cointegrating relations).

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::johansen_table::{GAMMA_MOMENTS, MAX_EIGEN_CV_5PCT, TRACE_CV_5PCT};
use crate::dist::gamma_sf_moments;
use crate::error::{Error, Result};
use crate::linalg::{cholesky_lower, least_squares, symmetrize};
use crate::series::CountryPanel;

/// Largest system the embedded critical values cover.
pub const MAX_JOHANSEN_VARS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum JohansenDeterministic {
    /// No deterministic terms. Not implemented.
    None,
    /// Unrestricted intercept, no trend.
    #[default]
    InterceptNoTrend,
    /// Intercept and linear trend. Not implemented.
    InterceptTrend,
}

/// Which transformation of the panel the test was run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum JohansenInput {
    #[default]
    Levels,
    Differences,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JohansenResult {
    pub variables: Vec<String>,
    pub input: JohansenInput,
    pub deterministic: JohansenDeterministic,
    pub lags_in_differences: usize,
    pub n_obs: usize,
    pub eigenvalues: Vec<f64>,
    pub trace_stats: Vec<f64>,
    pub max_eigen_stats: Vec<f64>,
    pub trace_cv_5pct: Vec<f64>,
    pub max_eigen_cv_5pct: Vec<f64>,
    /// Gamma-approximation p-values (approximate).
    pub p_values_trace: Vec<f64>,
    pub p_values_max: Vec<f64>,
    /// Number of cointegrating relations from the sequential trace test.
    pub rank_decision: usize,
}

impl JohansenResult {
    pub fn hypothesis_label(r: usize) -> String {
        match r {
            0 => "None".to_string(),
            r => format!("At most {r}"),
        }
    }

    pub fn trace_rejects(&self, r: usize) -> bool {
        self.trace_stats[r] > self.trace_cv_5pct[r]
    }

    pub fn max_eigen_rejects(&self, r: usize) -> bool {
        self.max_eigen_stats[r] > self.max_eigen_cv_5pct[r]
    }

    pub fn interpretation(&self, r: usize) -> &'static str {
        if self.trace_rejects(r) || self.max_eigen_rejects(r) {
            "Cointegration at the 5% level."
        } else {
            "No cointegration at the 5% level."
        }
    }
}

/// Runs the test on the panel as given (levels unless the caller passes a
/// differenced panel). `input` only labels the result.
pub fn johansen_test(
    panel: &CountryPanel,
    lags_in_differences: usize,
    deterministic: JohansenDeterministic,
) -> Result<JohansenResult> {
    johansen_test_labeled(
        panel,
        lags_in_differences,
        deterministic,
        JohansenInput::Levels,
    )
}

pub fn johansen_test_labeled(
    panel: &CountryPanel,
    lags_in_differences: usize,
    deterministic: JohansenDeterministic,
    input: JohansenInput,
) -> Result<JohansenResult> {
    let data = panel.matrix()?;
    let mut res = johansen_matrix(&data, lags_in_differences, deterministic)?;
    res.variables = panel.names();
    res.input = input;
    Ok(res)
}

/// Test on a `T x K` data matrix.
pub fn johansen_matrix(
    y: &DMatrix<f64>,
    lags_in_differences: usize,
    deterministic: JohansenDeterministic,
) -> Result<JohansenResult> {
    if deterministic != JohansenDeterministic::InterceptNoTrend {
        return Err(Error::Unsupported(format!(
            "Johansen deterministic case {deterministic:?}"
        )));
    }
    if lags_in_differences < 1 {
        return Err(Error::InvalidInput(
            "Johansen test needs at least one lag in differences".into(),
        ));
    }
    let (t_total, k) = y.shape();
    if k > MAX_JOHANSEN_VARS {
        return Err(Error::CriticalValuesUnavailable(format!(
            "{k} variables; tables cover at most {MAX_JOHANSEN_VARS}"
        )));
    }
    let lags = lags_in_differences;
    // rows t = lags+1 .. T-1 in level indexing
    let n = t_total.saturating_sub(lags + 1);
    let m = 1 + k * lags;
    if n <= m + k {
        return Err(Error::InsufficientObservations(format!(
            "{n} observations for a Johansen test with {k} variables and {lags} lag(s)"
        )));
    }
    let first = lags + 1;
    let dy = |t: usize, j: usize| y[(t, j)] - y[(t - 1, j)];
    let z0 = DMatrix::from_fn(n, k, |r, j| dy(first + r, j));
    let z1 = DMatrix::from_fn(n, k, |r, j| y[(first + r - 1, j)]);
    let z2 = DMatrix::from_fn(n, m, |r, c| {
        if c == 0 {
            1.0
        } else {
            let l = (c - 1) / k + 1;
            let j = (c - 1) % k;
            dy(first + r - l, j)
        }
    });

    let r0 = least_squares(&z2, &z0)
        .map_err(relabel_collinear)?
        .residuals;
    let r1 = least_squares(&z2, &z1)
        .map_err(relabel_collinear)?
        .residuals;
    let nf = n as f64;
    let s00 = sym(&(r0.transpose() * &r0 / nf));
    let s11 = sym(&(r1.transpose() * &r1 / nf));
    let s01 = r0.transpose() * &r1 / nf;

    let l00 = cholesky_lower(&s00).ok_or_else(|| Error::collinear_in("S00"))?;
    let l11 = cholesky_lower(&s11).ok_or_else(|| Error::collinear_in("S11"))?;
    if !well_conditioned(&l00) || !well_conditioned(&l11) {
        return Err(Error::collinear());
    }
    // whitened pencil: C = L11^-1 S10 S00^-1 S01 L11^-T
    let a = l00
        .solve_lower_triangular(&s01)
        .ok_or_else(|| Error::collinear_in("S00"))?; // L00^-1 S01
    let b = l11
        .solve_lower_triangular(&a.transpose())
        .ok_or_else(|| Error::collinear_in("S11"))?; // L11^-1 S10 L00^-T
    let c = sym(&(&b * b.transpose()));
    let mut eig: Vec<f64> = c
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|v| v.clamp(0.0, 1.0 - 1e-15))
        .collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let max_eigen_stats: Vec<f64> = eig.iter().map(|l| -nf * (1.0 - l).ln()).collect();
    let mut trace_stats = vec![0.0; k];
    let mut acc = 0.0;
    for r in (0..k).rev() {
        acc += max_eigen_stats[r];
        trace_stats[r] = acc;
    }

    // hypothesis r leaves m = K - r common trends
    let trace_cv_5pct: Vec<f64> = (0..k).map(|r| TRACE_CV_5PCT[k - r - 1]).collect();
    let max_eigen_cv_5pct: Vec<f64> = (0..k).map(|r| MAX_EIGEN_CV_5PCT[k - r - 1]).collect();
    let p_values_trace = (0..k)
        .map(|r| gamma_p(trace_stats[r], k - r, JohansenStatistic::Trace))
        .collect();
    let p_values_max = (0..k)
        .map(|r| gamma_p(max_eigen_stats[r], k - r, JohansenStatistic::MaxEigen))
        .collect();
    let rank_decision = (0..k)
        .find(|&r| trace_stats[r] <= trace_cv_5pct[r])
        .unwrap_or(k);

    Ok(JohansenResult {
        variables: (0..k).map(|j| format!("y{}", j + 1)).collect(),
        input: JohansenInput::Levels,
        deterministic,
        lags_in_differences: lags,
        n_obs: n,
        eigenvalues: eig,
        trace_stats,
        max_eigen_stats,
        trace_cv_5pct,
        max_eigen_cv_5pct,
        p_values_trace,
        p_values_max,
        rank_decision,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JohansenStatistic {
    Trace,
    MaxEigen,
}

fn gamma_p(statistic: f64, trends: usize, kind: JohansenStatistic) -> f64 {
    let (_, tm, tv, mm, mv) = GAMMA_MOMENTS[trends - 1];
    match kind {
        JohansenStatistic::Trace => gamma_sf_moments(statistic, tm, tv),
        JohansenStatistic::MaxEigen => gamma_sf_moments(statistic, mm, mv),
    }
}

/// Approximate asymptotic p-value for a statistic testing a hypothesis that
/// leaves `common_trends` (= K - r) stochastic trends, from a gamma
/// distribution matched to the simulated mean and variance.
pub fn johansen_p_value(
    statistic: f64,
    common_trends: usize,
    kind: JohansenStatistic,
) -> Result<f64> {
    if common_trends == 0 || common_trends > MAX_JOHANSEN_VARS {
        return Err(Error::CriticalValuesUnavailable(format!(
            "{common_trends} common trends; tables cover 1..={MAX_JOHANSEN_VARS}"
        )));
    }
    Ok(gamma_p(statistic, common_trends, kind))
}

fn relabel_collinear(e: Error) -> Error {
    match e {
        Error::Collinear(_) => Error::collinear_in("Johansen auxiliary regression"),
        e => e,
    }
}

fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = m.clone();
    symmetrize(&mut m);
    m
}

/// Rejects factors whose diagonal collapses relative to its largest entry.
fn well_conditioned(l: &DMatrix<f64>) -> bool {
    let d: Vec<f64> = l.diagonal().iter().map(|v| v.abs()).collect();
    let max = d.iter().cloned().fold(0.0, f64::max);
    d.iter().all(|&v| v > 1e-7 * max)
}
