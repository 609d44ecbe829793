use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::dist::chi2_sf;
use crate::error::{Error, Result};
use crate::linalg::quadratic_form_inv;
use crate::var::VarEstimate;

/// Label used for the joint test of all other variables.
pub const ALL_EXCLUDED: &str = "All";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaldBlockResult {
    pub dependent: String,
    /// Excluded variable name, or `"All"`.
    pub excluded: String,
    pub chi_sq: f64,
    pub df: usize,
    pub p_value: f64,
}

/// Block-exogeneity Wald tests: for every equation, each other variable's
/// lag block, then all other blocks jointly.
pub fn granger_wald(est: &VarEstimate) -> Result<Vec<WaldBlockResult>> {
    let k = est.nvars();
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        let others: Vec<usize> = (0..k).filter(|&j| j != i).collect();
        for &j in &others {
            out.push(wald_block(est, i, &[j], est.variables[j].clone())?);
        }
        if !others.is_empty() {
            out.push(wald_block(est, i, &others, ALL_EXCLUDED.to_string())?);
        }
    }
    Ok(out)
}

/// Wald statistic for `H0: every lag of the `excluded` variables is zero in
/// equation `eq`.
pub fn wald_block(
    est: &VarEstimate,
    eq: usize,
    excluded: &[usize],
    label: String,
) -> Result<WaldBlockResult> {
    let p = est.lag_order();
    let m = est.n_regressors();
    let idx: Vec<usize> = excluded
        .iter()
        .flat_map(|&j| (1..=p).map(move |l| (j, l)))
        .map(|(j, l)| est.regressor_index(j, l))
        .collect();
    let b = DVector::from_iterator(idx.len(), idx.iter().map(|&r| est.beta[(r, eq)]));
    let v = DMatrix::from_fn(idx.len(), idx.len(), |a, c| {
        est.coef_cov[(eq * m + idx[a], eq * m + idx[c])]
    });
    let chi_sq = quadratic_form_inv(&b, &v).ok_or_else(|| {
        Error::DegenerateCovariance(format!(
            "coefficient covariance block for `{label}` in equation `{}` is singular",
            est.variables[eq]
        ))
    })?;
    let df = idx.len();
    Ok(WaldBlockResult {
        dependent: est.variables[eq].clone(),
        excluded: label,
        chi_sq,
        df,
        p_value: chi2_sf(chi_sq, df as f64),
    })
}
