use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::irf::{impact_matrix, ma_coefficients};
use crate::error::{Error, Result};
use crate::linalg::cholesky_lower;
use crate::var::VarEstimate;

/// Pointwise percentile bands for orthogonalised impulse responses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrfBands {
    pub method: String,
    pub draws: usize,
    pub seed: u64,
    /// Two-sided coverage, e.g. 0.95.
    pub coverage: f64,
    pub lower: Vec<DMatrix<f64>>,
    pub upper: Vec<DMatrix<f64>>,
}

/// Parametric Monte Carlo bands: coefficients are drawn from their asymptotic
/// normal distribution `N(beta, kron(sigma_ls, (X'X)^-1))`, the impact matrix
/// is held at its point estimate, and percentiles are taken per entry.
///
/// Draw `d` uses its own ChaCha stream, so results do not depend on how the
/// draws are scheduled.
pub fn irf_confidence_bands(
    est: &VarEstimate,
    horizon: usize,
    ordering: &[usize],
    draws: usize,
    seed: u64,
) -> Result<IrfBands> {
    if draws < 2 {
        return Err(Error::InvalidInput(
            "need at least two Monte Carlo draws".into(),
        ));
    }
    let impact = impact_matrix(&est.sigma_ls, ordering)?;
    let l_sigma = cholesky_lower(&est.sigma_ls)
        .ok_or_else(|| Error::CholeskyFailed("residual covariance".into()))?;
    let l_q =
        cholesky_lower(&est.xtx_inv).ok_or_else(|| Error::CholeskyFailed("(X'X)^-1".into()))?;
    let (m, k) = est.beta.shape();
    let p = est.lag_order();
    let c = usize::from(est.spec.include_constant);

    let samples: Vec<Vec<DMatrix<f64>>> = (0..draws)
        .into_par_iter()
        .map(|d| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(d as u64);
            let z = DMatrix::from_fn(m, k, |_, _| rng.sample::<f64, _>(StandardNormal));
            let beta = &est.beta + &l_q * z * l_sigma.transpose();
            let coefs: Vec<DMatrix<f64>> = (0..p)
                .map(|l| DMatrix::from_fn(k, k, |i, j| beta[(c + l * k + j, i)]))
                .collect();
            ma_coefficients(&coefs, horizon)
                .into_iter()
                .map(|psi| psi * &impact)
                .collect()
        })
        .collect();

    let alpha = 0.05;
    let mut lower = Vec::with_capacity(horizon + 1);
    let mut upper = Vec::with_capacity(horizon + 1);
    let mut buf = vec![0.0; draws];
    for h in 0..=horizon {
        let mut lo = DMatrix::zeros(k, k);
        let mut hi = DMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                for (b, s) in buf.iter_mut().zip(&samples) {
                    *b = s[h][(i, j)];
                }
                buf.sort_by(|a, b| a.partial_cmp(b).unwrap());
                lo[(i, j)] = percentile(&buf, alpha / 2.0);
                hi[(i, j)] = percentile(&buf, 1.0 - alpha / 2.0);
            }
        }
        lower.push(lo);
        upper.push(hi);
    }
    Ok(IrfBands {
        method: "parametric Monte Carlo on the asymptotic coefficient distribution".into(),
        draws,
        seed,
        coverage: 1.0 - alpha,
        lower,
        upper,
    })
}

/// Linear-interpolation percentile of sorted data.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let w = pos - lo as f64;
    sorted[lo] * (1.0 - w) + sorted[hi] * w
}
