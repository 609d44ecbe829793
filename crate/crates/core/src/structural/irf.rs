use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::diagnostics::stability_of;
use crate::error::{Error, Result};
use crate::linalg::cholesky_lower;
use crate::var::VarEstimate;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpulseResponses {
    pub variables: Vec<String>,
    /// Shock ordering as indices into `variables`.
    pub ordering: Vec<usize>,
    /// Impact matrix `B` (`B B' = sigma`), equal to the Cholesky factor under
    /// the identity ordering.
    pub impact: DMatrix<f64>,
    /// Reduced-form MA coefficients `Psi_0 = I, .., Psi_H`.
    pub ma_coeffs: Vec<DMatrix<f64>>,
    /// `irf[h][(i, j)]`: response of variable `i` at horizon `h` to a
    /// one-standard-deviation shock `j`.
    pub irf: Vec<DMatrix<f64>>,
    /// Set when the estimate has a root on or outside the unit circle.
    pub warning: Option<String>,
}

impl ImpulseResponses {
    pub fn horizon(&self) -> usize {
        self.irf.len() - 1
    }
}

/// `Psi_h = sum_{i=1..min(h,p)} A_i Psi_{h-i}` with `Psi_0 = I`.
pub fn ma_coefficients(coefs: &[DMatrix<f64>], horizon: usize) -> Vec<DMatrix<f64>> {
    let k = coefs.first().map_or(0, |a| a.nrows());
    let mut psi: Vec<DMatrix<f64>> = Vec::with_capacity(horizon + 1);
    psi.push(DMatrix::identity(k, k));
    for h in 1..=horizon {
        let mut m = DMatrix::zeros(k, k);
        for (i, a) in coefs.iter().enumerate().take(h) {
            m += a * &psi[h - 1 - i];
        }
        psi.push(m);
    }
    psi
}

pub(crate) fn check_ordering(ordering: &[usize], k: usize) -> Result<()> {
    let mut seen = vec![false; k];
    if ordering.len() != k
        || ordering
            .iter()
            .any(|&i| i >= k || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::InvalidInput(format!(
            "ordering {ordering:?} is not a permutation of 0..{k}"
        )));
    }
    Ok(())
}

/// Lower-triangular factor of `sigma` in the permuted ordering, mapped back
/// to variable order: `B[(i, j)] = P[(pos(i), pos(j))]`.
pub fn impact_matrix(sigma: &DMatrix<f64>, ordering: &[usize]) -> Result<DMatrix<f64>> {
    let k = sigma.nrows();
    check_ordering(ordering, k)?;
    let permuted = DMatrix::from_fn(k, k, |a, b| sigma[(ordering[a], ordering[b])]);
    let p = cholesky_lower(&permuted).ok_or_else(|| {
        Error::CholeskyFailed("residual covariance is not positive definite".into())
    })?;
    let mut pos = vec![0; k];
    for (a, &i) in ordering.iter().enumerate() {
        pos[i] = a;
    }
    Ok(DMatrix::from_fn(k, k, |i, j| p[(pos[i], pos[j])]))
}

/// Orthogonalised impulse responses `Psi_h B` for `h = 0..=horizon`.
pub fn impulse_responses(
    est: &VarEstimate,
    horizon: usize,
    ordering: &[usize],
) -> Result<ImpulseResponses> {
    let impact = impact_matrix(&est.sigma_ls, ordering)?;
    let ma_coeffs = ma_coefficients(&est.coefs, horizon);
    let irf = ma_coeffs.iter().map(|psi| psi * &impact).collect();
    let stability = stability_of(&est.coefs);
    let warning = (!stability.stable).then(|| {
        format!(
            "VAR is not stable (max root modulus {:.6}); responses do not die out",
            stability.max_modulus()
        )
    });
    Ok(ImpulseResponses {
        variables: est.variables.clone(),
        ordering: ordering.to_vec(),
        impact,
        ma_coeffs,
        irf,
        warning,
    })
}
