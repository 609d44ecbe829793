use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::irf::{impact_matrix, impulse_responses, ma_coefficients};
use crate::error::{Error, Result};
use crate::var::VarEstimate;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FevdRow {
    pub period: usize,
    /// Forecast standard error at this horizon.
    pub se: f64,
    /// Percentage of forecast-error variance due to each shock, in variable
    /// order.
    pub shares: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FevdTable {
    pub variable: String,
    pub rows: Vec<FevdRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceDecomposition {
    pub variables: Vec<String>,
    pub ordering: Vec<usize>,
    pub tables: Vec<FevdTable>,
}

/// Shares for periods `1..=horizon`, in percent.
pub fn variance_decomposition(
    est: &VarEstimate,
    horizon: usize,
    ordering: &[usize],
) -> Result<VarianceDecomposition> {
    if horizon == 0 {
        return Err(Error::InvalidInput(
            "FEVD horizon must be at least 1".into(),
        ));
    }
    let irf = impulse_responses(est, horizon - 1, ordering)?;
    let k = est.nvars();
    let tables = (0..k)
        .map(|i| {
            let mut acc = vec![0.0; k];
            let rows = (0..horizon)
                .map(|h| {
                    for (j, a) in acc.iter_mut().enumerate() {
                        *a += irf.irf[h][(i, j)].powi(2);
                    }
                    let total: f64 = acc.iter().sum();
                    FevdRow {
                        period: h + 1,
                        se: total.sqrt(),
                        shares: acc.iter().map(|a| 100.0 * a / total).collect(),
                    }
                })
                .collect();
            FevdTable {
                variable: est.variables[i].clone(),
                rows,
            }
        })
        .collect();
    Ok(VarianceDecomposition {
        variables: est.variables.clone(),
        ordering: ordering.to_vec(),
        tables,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoricalPath {
    pub variable: String,
    pub actual: Vec<f64>,
    /// Deterministic path from the presample values and the intercept.
    pub baseline: Vec<f64>,
    /// `contributions[k][t]`: cumulative effect of shock `k` at time `t`.
    pub contributions: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoricalDecomposition {
    pub variables: Vec<String>,
    pub ordering: Vec<usize>,
    /// Calendar year of every fitted observation.
    pub years: Vec<i32>,
    /// Structural shocks `w_t = B^-1 u_t`, `T_eff x K`.
    pub shocks: DMatrix<f64>,
    pub paths: Vec<HistoricalPath>,
}

impl HistoricalDecomposition {
    /// Largest `|baseline + sum(contributions) - actual|` relative to the
    /// scale of the data.
    pub fn max_identity_error(&self) -> f64 {
        self.paths
            .iter()
            .flat_map(|p| {
                (0..p.actual.len()).map(move |t| {
                    let sum: f64 =
                        p.baseline[t] + p.contributions.iter().map(|c| c[t]).sum::<f64>();
                    (sum - p.actual[t]).abs() / p.actual[t].abs().max(1.0)
                })
            })
            .fold(0.0, f64::max)
    }
}

/// Splits every fitted observation into a baseline and one path per
/// structural shock.
pub fn historical_decomposition(
    est: &VarEstimate,
    ordering: &[usize],
) -> Result<HistoricalDecomposition> {
    let impact = impact_matrix(&est.sigma_ls, ordering)?;
    let lu = impact.clone().lu();
    let n = est.n_obs();
    let k = est.nvars();
    let p = est.lag_order();
    let u = &est.residuals;
    let shocks_t = lu
        .solve(&u.transpose())
        .ok_or_else(|| Error::CholeskyFailed("impact matrix is singular".into()))?;
    let shocks = shocks_t.transpose();

    let theta: Vec<DMatrix<f64>> = ma_coefficients(&est.coefs, n.saturating_sub(1))
        .into_iter()
        .map(|psi| psi * &impact)
        .collect();

    let mut hist: Vec<DVector<f64>> = (0..p).map(|i| est.data.row(i).transpose()).collect();
    let mut baseline = Vec::with_capacity(n);
    for _ in 0..n {
        let next = est.predict_next(&hist);
        hist.push(next.clone());
        baseline.push(next);
    }

    let endog = est.endog();
    let paths = (0..k)
        .map(|i| {
            let contributions = (0..k)
                .map(|s| {
                    (0..n)
                        .map(|t| {
                            (0..=t)
                                .map(|lag| theta[lag][(i, s)] * shocks[(t - lag, s)])
                                .sum()
                        })
                        .collect()
                })
                .collect();
            HistoricalPath {
                variable: est.variables[i].clone(),
                actual: endog.column(i).iter().copied().collect(),
                baseline: baseline.iter().map(|b| b[i]).collect(),
                contributions,
            }
        })
        .collect();

    Ok(HistoricalDecomposition {
        variables: est.variables.clone(),
        ordering: ordering.to_vec(),
        years: (0..n).map(|t| est.start_year + t as i32).collect(),
        shocks,
        paths,
    })
}
