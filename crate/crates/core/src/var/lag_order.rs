//! Lag-order selection on a common estimation sample.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::estimate::{build_regressors, system_log_likelihood, VarSpec};
use crate::dist::chi2_critical;
use crate::error::{Error, Result};
use crate::linalg::{cross_product, least_squares, log_det_spd};
use crate::series::CountryPanel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagRow {
    pub lag: usize,
    pub log_l: f64,
    /// Sequential modified LR statistic; absent at lag 0.
    pub lr: Option<f64>,
    pub fpe: f64,
    pub aic: f64,
    pub sc: f64,
    pub hq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarredLags {
    pub lr: usize,
    pub fpe: usize,
    pub aic: usize,
    pub sc: usize,
    pub hq: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LagSelection {
    pub max_lag: usize,
    /// Common sample size.
    pub n_obs: usize,
    pub rows: Vec<LagRow>,
    pub starred: StarredLags,
}

impl LagSelection {
    /// Lag picked by most criteria (ties go to the shorter lag) together with
    /// the names of the criteria that picked it.
    pub fn consensus(&self) -> (usize, Vec<&'static str>) {
        let s = self.starred;
        let votes = [
            ("LR", s.lr),
            ("FPE", s.fpe),
            ("AIC", s.aic),
            ("SC", s.sc),
            ("HQ", s.hq),
        ];
        let best = (0..=self.max_lag)
            .max_by_key(|&l| {
                let n = votes.iter().filter(|(_, v)| *v == l).count();
                (n, std::cmp::Reverse(l))
            })
            .unwrap_or(0);
        let names = votes
            .iter()
            .filter(|(_, v)| *v == best)
            .map(|(n, _)| *n)
            .collect();
        (best, names)
    }
}

pub fn select_lag_order(panel: &CountryPanel, max_lag: usize) -> Result<LagSelection> {
    select_lag_order_matrix(&panel.matrix()?, max_lag)
}

/// Every candidate lag conditions on the same `max_lag` presample values.
pub fn select_lag_order_matrix(data: &DMatrix<f64>, max_lag: usize) -> Result<LagSelection> {
    if max_lag < 1 {
        return Err(Error::InvalidInput("max_lag must be at least 1".into()));
    }
    let (t, k) = data.shape();
    let largest = VarSpec::new(max_lag).regressors(k);
    if t <= max_lag || t - max_lag <= largest {
        return Err(Error::InsufficientObservations(format!(
            "max_lag {max_lag} is too large for {t} observations of {k} variables"
        )));
    }
    let n = t - max_lag;
    let nf = n as f64;
    let y = data.rows(max_lag, n).into_owned();

    let mut rows: Vec<LagRow> = Vec::with_capacity(max_lag + 1);
    let mut log_dets = Vec::with_capacity(max_lag + 1);
    for lag in 0..=max_lag {
        let x = if lag == 0 {
            DMatrix::from_element(n, 1, 1.0)
        } else {
            let full = build_regressors(data, VarSpec::new(lag));
            full.rows(max_lag - lag, n).into_owned()
        };
        let m = x.ncols();
        let fit = least_squares(&x, &y)?;
        let sigma = cross_product(&fit.residuals, nf);
        let ld = log_det_spd(&sigma).ok_or_else(|| {
            Error::DegenerateCovariance(format!("singular residual covariance at lag {lag}"))
        })?;
        let log_l = system_log_likelihood(&sigma, n)?;
        let params = (k * m) as f64;
        let lr = log_dets
            .last()
            .map(|prev: &f64| (nf - m as f64) * (prev - ld));
        let kf = k as f64;
        let fpe = ((nf + m as f64) / (nf - m as f64)).powf(kf) * ld.exp();
        rows.push(LagRow {
            lag,
            log_l,
            lr,
            fpe,
            aic: (-2.0 * log_l + 2.0 * params) / nf,
            sc: (-2.0 * log_l + params * nf.ln()) / nf,
            hq: (-2.0 * log_l + 2.0 * params * nf.ln().ln()) / nf,
        });
        log_dets.push(ld);
    }

    let argmin = |f: fn(&LagRow) -> f64| {
        rows.iter()
            .min_by(|a, b| f(a).partial_cmp(&f(b)).unwrap())
            .map(|r| r.lag)
            .unwrap()
    };
    let lr_cv = chi2_critical(0.05, (k * k) as f64);
    let lr_star = rows
        .iter()
        .rev()
        .find(|r| r.lr.is_some_and(|v| v > lr_cv))
        .map(|r| r.lag)
        .unwrap_or(0);
    let starred = StarredLags {
        lr: lr_star,
        fpe: argmin(|r| r.fpe),
        aic: argmin(|r| r.aic),
        sc: argmin(|r| r.sc),
        hq: argmin(|r| r.hq),
    };
    Ok(LagSelection {
        max_lag,
        n_obs: n,
        rows,
        starred,
    })
}
