//! Multivariate residual serial-correlation LM tests.
//!
//! For each lag `h` the VAR residuals are regressed on the original
//! regressors plus lagged residuals. With `K` equations, `k` original
//! regressors and `r` added regressors per equation:
//!
//! ```text
//! N    = T - k - r - (K - r + 1)/2
//! LRE  = N * ln(|S_r| / |S_u|)                         ~ chi2(K r)
//! s    = sqrt((K^2 r^2 - 4) / (K^2 + r^2 - 5))         (1 when the denominator <= 0)
//! q    = K r / 2 - 1
//! RaoF = ((|S_r| / |S_u|)^(1/s) - 1) * (N s - q) / (K r) ~ F(K r, N s - q)
//! ```
//!
//! `S_r`, `S_u` are the ML residual covariances of the restricted and the
//! auxiliary regression.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::dist::{chi2_sf, f_sf};
use crate::error::{Error, Result};
use crate::linalg::{cross_product, least_squares, log_det_spd};
use crate::var::VarEstimate;

/// Treatment of the lagged residuals that fall before the sample start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Presample {
    #[default]
    ZeroFill,
    /// Drop the first rows instead.
    Trim,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LmRow {
    pub lag: usize,
    pub lre_stat: f64,
    pub df: usize,
    pub p_lre: f64,
    pub rao_f: f64,
    pub df_num: f64,
    pub df_denom: f64,
    pub p_rao: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LmResult {
    pub presample: Presample,
    /// Tests of no correlation at lag `h` alone.
    pub at_lag: Vec<LmRow>,
    /// Tests of no correlation at lags `1..=h`.
    pub cumulative: Vec<LmRow>,
}

pub fn serial_correlation_lm(est: &VarEstimate, max_lag: usize) -> Result<LmResult> {
    serial_correlation_lm_with(est, max_lag, Presample::ZeroFill)
}

pub fn serial_correlation_lm_with(
    est: &VarEstimate,
    max_lag: usize,
    presample: Presample,
) -> Result<LmResult> {
    if max_lag < 1 {
        return Err(Error::InvalidInput("LM test needs max_lag >= 1".into()));
    }
    let x = est.regressors();
    let u = &est.residuals;
    let mut at_lag = Vec::with_capacity(max_lag);
    let mut cumulative = Vec::with_capacity(max_lag);
    for h in 1..=max_lag {
        at_lag.push(lm_row(&x, u, &[h], presample)?);
        let lags: Vec<usize> = (1..=h).collect();
        cumulative.push(lm_row(&x, u, &lags, presample)?);
    }
    Ok(LmResult {
        presample,
        at_lag,
        cumulative,
    })
}

fn lm_row(
    x: &DMatrix<f64>,
    u: &DMatrix<f64>,
    lags: &[usize],
    presample: Presample,
) -> Result<LmRow> {
    let (n_full, kx) = x.shape();
    let k = u.ncols();
    let max_h = *lags.iter().max().unwrap();
    let skip = match presample {
        Presample::ZeroFill => 0,
        Presample::Trim => max_h,
    };
    let n = n_full.saturating_sub(skip);
    let r = k * lags.len();
    if n <= kx + r + 1 {
        return Err(Error::InsufficientObservations(format!(
            "{n} observations for an auxiliary regression with {} regressors",
            kx + r
        )));
    }

    let aux = DMatrix::from_fn(n, kx + r, |row, c| {
        let t = row + skip;
        if c < kx {
            x[(t, c)]
        } else {
            let h = lags[(c - kx) / k];
            let j = (c - kx) % k;
            if t >= h {
                u[(t - h, j)]
            } else {
                0.0
            }
        }
    });
    let dep = u.rows(skip, n).into_owned();
    let xr = x.rows(skip, n).into_owned();

    let singular = || Error::DegenerateRegression("singular auxiliary regression".into());
    let restricted = least_squares(&xr, &dep).map_err(|_| singular())?;
    let unrestricted = least_squares(&aux, &dep).map_err(|_| singular())?;
    let nf = n as f64;
    let ld_r = log_det_spd(&cross_product(&restricted.residuals, nf)).ok_or_else(singular)?;
    let ld_u = log_det_spd(&cross_product(&unrestricted.residuals, nf)).ok_or_else(singular)?;
    let log_ratio = (ld_r - ld_u).max(0.0);

    let (kf, rf) = (k as f64, r as f64);
    let big_n = nf - kx as f64 - rf - 0.5 * (kf - rf + 1.0);
    let lre = big_n * log_ratio;
    let denom = kf * kf + rf * rf - 5.0;
    let s = if denom > 0.0 {
        ((kf * kf * rf * rf - 4.0) / denom).sqrt()
    } else {
        1.0
    };
    let q = 0.5 * kf * rf - 1.0;
    let df_num = kf * rf;
    let df_denom = big_n * s - q;
    let rao_f = ((log_ratio / s).exp() - 1.0) * df_denom / df_num;
    let df = k * r;
    Ok(LmRow {
        lag: max_h,
        lre_stat: lre,
        df,
        p_lre: chi2_sf(lre, df as f64),
        rao_f,
        df_num,
        df_denom,
        p_rao: f_sf(rao_f, df_num, df_denom),
    })
}
