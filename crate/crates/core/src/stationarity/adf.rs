//! Augmented Dickey-Fuller unit-root test, constant-only case.
//!
//! Regression: `dy_t = a + g*y_{t-1} + sum_{i=1..k} d_i*dy_{t-i} + e_t`,
//! statistic = t-ratio of `g`. Critical values and p-values come from
//! finite-sample response surfaces evaluated at the regression's number of
//! observations.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use statrs::distribution::ContinuousCDF;

use super::adf_table::{CV_SURFACES, DF_TAU_C_SURFACE};
use crate::dist::std_normal;
use crate::error::{Error, Result};
use crate::linalg::least_squares;
use crate::series::AnnualSeries;

/// Smallest regression sample the test accepts.
pub const MIN_ADF_OBS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdfDeterministic {
    Constant,
}

/// How the number of augmentation lags is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LagRule {
    Fixed(usize),
    /// Schwarz criterion over `0..=max_lags` on a common sample.
    Schwarz,
}

impl std::fmt::Display for LagRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LagRule::Fixed(k) => write!(f, "fixed({k})"),
            LagRule::Schwarz => f.write_str("schwarz"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdfOptions {
    pub max_lags: Option<usize>,
    pub lag_rule: LagRule,
}

impl Default for AdfOptions {
    fn default() -> Self {
        Self {
            max_lags: None,
            lag_rule: LagRule::Schwarz,
        }
    }
}

impl AdfOptions {
    pub fn fixed(lags: usize) -> Self {
        Self {
            max_lags: None,
            lag_rule: LagRule::Fixed(lags),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValues {
    pub one: f64,
    pub five: f64,
    pub ten: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdfResult {
    pub variable: String,
    pub statistic: f64,
    pub p_value: f64,
    pub critical_values: CriticalValues,
    pub lags_used: usize,
    pub max_lags: usize,
    pub lag_rule: LagRule,
    pub deterministic: AdfDeterministic,
    pub n_obs: usize,
}

impl AdfResult {
    /// Rejects the unit-root null at the 5% level.
    pub fn stationary(&self) -> bool {
        self.statistic < self.critical_values.five
    }

    pub fn interpretation(&self) -> &'static str {
        if self.stationary() {
            "Reject null hypothesis; series is stationary."
        } else {
            "Fail to reject null hypothesis; unit root present."
        }
    }
}

/// Default lag cap `floor(12 * (T/100)^0.25)`.
pub fn schwert_max_lags(n: usize) -> usize {
    (12.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize
}

fn eval_surface(b: &[f64], n: f64) -> f64 {
    b.iter()
        .enumerate()
        .map(|(i, c)| c / n.powi(i as i32))
        .sum()
}

/// 1%, 5% and 10% critical values for a regression with `n_obs` observations.
pub fn adf_critical_values(n_obs: usize) -> CriticalValues {
    let n = n_obs as f64;
    CriticalValues {
        one: eval_surface(&CV_SURFACES[0].1, n),
        five: eval_surface(&CV_SURFACES[1].1, n),
        ten: eval_surface(&CV_SURFACES[2].1, n),
    }
}

/// Quantile table `(probability, statistic)` at sample size `n_obs`, with the
/// 1/5/10% rows taken from the critical-value surfaces.
fn quantile_table(n_obs: usize) -> Vec<(f64, f64)> {
    let n = n_obs as f64;
    let mut table: Vec<(f64, f64)> = DF_TAU_C_SURFACE
        .iter()
        .map(|(p, b)| {
            let anchored = CV_SURFACES.iter().find(|(q, _)| (q - p).abs() < 1e-12);
            match anchored {
                Some((_, cv)) => (*p, eval_surface(cv, n)),
                None => (*p, eval_surface(b, n)),
            }
        })
        .collect();
    // keep the table monotone so the inverse is well defined
    for i in 1..table.len() {
        if table[i].1 <= table[i - 1].1 {
            table[i].1 = table[i - 1].1 + 1e-9;
        }
    }
    table
}

/// Left-tail p-value of a DF statistic by interpolation of the quantile
/// table in normal-score space.
pub fn adf_p_value(statistic: f64, n_obs: usize) -> f64 {
    let normal = std_normal();
    let table = quantile_table(n_obs);
    let z: Vec<f64> = table.iter().map(|(p, _)| normal.inverse_cdf(*p)).collect();
    let q: Vec<f64> = table.iter().map(|(_, q)| *q).collect();
    let last = q.len() - 1;
    let seg = if statistic <= q[0] {
        0
    } else if statistic >= q[last] {
        last - 1
    } else {
        q.windows(2).position(|w| statistic < w[1]).unwrap()
    };
    let slope = (z[seg + 1] - z[seg]) / (q[seg + 1] - q[seg]);
    let zs = z[seg] + slope * (statistic - q[seg]);
    normal.cdf(zs).clamp(0.0, 1.0)
}

struct AdfFit {
    statistic: f64,
    ssr: f64,
    n_obs: usize,
}

/// Fits the ADF regression with `lags` augmentation terms using rows
/// `first..` of the differenced series.
fn adf_regression(y: &[f64], lags: usize, first: usize) -> Result<AdfFit> {
    // row index t refers to y[t] with t in first..y.len()
    let n = y.len() - first;
    let m = 2 + lags;
    if n <= m {
        return Err(Error::InsufficientObservations(format!(
            "{n} observations for an ADF regression with {lags} lag(s)"
        )));
    }
    let x = DMatrix::from_fn(n, m, |r, c| {
        let t = first + r;
        match c {
            0 => 1.0,
            1 => y[t - 1],
            c => {
                let i = c - 1;
                y[t - i] - y[t - i - 1]
            }
        }
    });
    let dy = DMatrix::from_fn(n, 1, |r, _| y[first + r] - y[first + r - 1]);
    let fit = least_squares(&x, &dy).map_err(|e| match e {
        Error::Collinear(_) => {
            Error::DegenerateRegression("deterministic series; regressors are collinear".into())
        }
        e => e,
    })?;
    let ssr = fit.residuals.norm_squared();
    let scale = dy.norm_squared().max(f64::MIN_POSITIVE);
    if ssr <= 1e-24 * scale {
        return Err(Error::DegenerateRegression(
            "zero residual variance (deterministic series)".into(),
        ));
    }
    let s2 = ssr / (n - m) as f64;
    let se = (s2 * fit.xtx_inv[(1, 1)]).sqrt();
    Ok(AdfFit {
        statistic: fit.coef[(1, 0)] / se,
        ssr,
        n_obs: n,
    })
}

/// ADF test on a plain slice.
pub fn adf_test_values(name: &str, y: &[f64], options: &AdfOptions) -> Result<AdfResult> {
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "series `{name}` has non-finite values"
        )));
    }
    let total = y.len();
    if total < MIN_ADF_OBS + 1 {
        return Err(Error::InsufficientObservations(format!(
            "series `{name}` has {total} values; the ADF test needs at least {}",
            MIN_ADF_OBS + 1
        )));
    }
    // largest k keeping the regression sample at MIN_ADF_OBS
    let feasible = total - 1 - MIN_ADF_OBS;

    let (lags, max_lags) = match options.lag_rule {
        LagRule::Fixed(k) => {
            if k > feasible {
                return Err(Error::InsufficientObservations(format!(
                    "{k} lag(s) leave fewer than {MIN_ADF_OBS} observations for `{name}`"
                )));
            }
            (k, options.max_lags.unwrap_or(k).max(k))
        }
        LagRule::Schwarz => {
            let kmax = options
                .max_lags
                .unwrap_or_else(|| schwert_max_lags(total))
                .min(feasible);
            let first = kmax + 1;
            let mut best = (f64::INFINITY, 0usize);
            for k in 0..=kmax {
                let fit = adf_regression(y, k, first)?;
                let n = fit.n_obs as f64;
                let sic = (fit.ssr / n).ln() + (k + 2) as f64 * n.ln() / n;
                if sic < best.0 {
                    best = (sic, k);
                }
            }
            (best.1, kmax)
        }
    };

    let fit = adf_regression(y, lags, lags + 1)?;
    Ok(AdfResult {
        variable: name.to_string(),
        statistic: fit.statistic,
        p_value: adf_p_value(fit.statistic, fit.n_obs),
        critical_values: adf_critical_values(fit.n_obs),
        lags_used: lags,
        max_lags,
        lag_rule: options.lag_rule,
        deterministic: AdfDeterministic::Constant,
        n_obs: fit.n_obs,
    })
}

/// ADF test on a fully observed annual series.
pub fn adf_test(series: &AnnualSeries, options: &AdfOptions) -> Result<AdfResult> {
    adf_test_values(series.name(), &series.dense()?, options)
}
