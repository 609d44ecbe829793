use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::demean_columns;
use crate::var::VarEstimate;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCorrResult {
    pub variables: Vec<String>,
    /// `by_lag[l][(i, j)] = corr(u_{i,t}, u_{j,t-l})`, `l = 0..=max_lag`.
    pub by_lag: Vec<DMatrix<f64>>,
    /// Asymptotic standard error `1/sqrt(T_eff)`.
    pub band: f64,
}

pub fn residual_cross_correlations(est: &VarEstimate, max_lag: usize) -> Result<CrossCorrResult> {
    let mut out = cross_correlations(&est.residuals, max_lag)?;
    out.variables = est.variables.clone();
    Ok(out)
}

/// Sample cross-correlations of the columns of `u` (mean-centred, divisor
/// `T`).
pub fn cross_correlations(u: &DMatrix<f64>, max_lag: usize) -> Result<CrossCorrResult> {
    let (n, k) = u.shape();
    if n < 3 || max_lag >= n - 2 {
        return Err(Error::InvalidInput(format!(
            "max_lag {max_lag} needs to be below T_eff - 2 = {}",
            n.saturating_sub(2)
        )));
    }
    let c = demean_columns(u);
    let nf = n as f64;
    let sd: Vec<f64> = (0..k)
        .map(|j| (c.column(j).norm_squared() / nf).sqrt())
        .collect();
    if let Some(j) = sd.iter().position(|&s| s == 0.0) {
        return Err(Error::DegenerateRegression(format!(
            "residual column {j} has zero variance"
        )));
    }
    let by_lag = (0..=max_lag)
        .map(|l| {
            DMatrix::from_fn(k, k, |i, j| {
                if l == 0 && i == j {
                    return 1.0;
                }
                let s: f64 = (l..n).map(|t| c[(t, i)] * c[(t - l, j)]).sum();
                (s / nf / (sd[i] * sd[j])).clamp(-1.0, 1.0)
            })
        })
        .collect();
    Ok(CrossCorrResult {
        variables: (0..k).map(|j| format!("u{}", j + 1)).collect(),
        by_lag,
        band: 1.0 / nf.sqrt(),
    })
}
