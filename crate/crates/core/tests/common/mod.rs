#![allow(dead_code)]

use std::path::PathBuf;

use macrovar::diagnostics::stability_of;
use macrovar::pipeline::PipelineConfig;
use macrovar::var::{estimate_var_matrix, simulate_var, VarEstimate, VarProcess, VarSpec};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("y{}", i + 1)).collect()
}

/// Random VAR(p) with every root inside modulus 0.95 and a well-conditioned
/// noise covariance.
pub fn random_stable_process(rng: &mut ChaCha8Rng, k: usize, p: usize) -> VarProcess {
    loop {
        let scale = 0.9 / (k * p) as f64;
        let coefs: Vec<DMatrix<f64>> = (0..p)
            .map(|_| DMatrix::from_fn(k, k, |_, _| rng.random_range(-1.0..1.0) * scale * 1.5))
            .collect();
        if stability_of(&coefs).max_modulus() < 0.95 {
            let l = DMatrix::from_fn(k, k, |i, j| {
                if j <= i {
                    rng.random_range(-1.0..1.0)
                } else {
                    0.0
                }
            });
            let noise_cov = &l * l.transpose() + DMatrix::identity(k, k) * 0.2;
            let intercept = DVector::from_fn(k, |_, _| rng.random_range(-1.0..1.0));
            return VarProcess {
                coefs,
                intercept,
                noise_cov,
            };
        }
    }
}

/// Simulated data and its VAR(p) estimate.
pub fn random_estimate(rng: &mut ChaCha8Rng, k: usize, p: usize, n: usize) -> VarEstimate {
    let process = random_stable_process(rng, k, p);
    let data = simulate_var(&process, n, 50, None, rng).unwrap();
    estimate_var_matrix(&data, &names(k), VarSpec::new(p)).unwrap()
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/fixtures")
}

/// Pipeline over the bundled panels, with fewer band draws to keep tests
/// quick.
pub fn fixture_config() -> PipelineConfig {
    PipelineConfig {
        csv_dir: fixture_dir(),
        cache_dir: std::env::temp_dir().join("macrovar-test-cache-unused"),
        irf_band_draws: 200,
        ..PipelineConfig::default()
    }
}

/// Plain normal-equation OLS, used as an oracle.
pub fn ols_normal_equations(x: &DMatrix<f64>, y: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let xtx_inv = (x.transpose() * x).try_inverse().expect("invertible X'X");
    (&xtx_inv * x.transpose() * y, xtx_inv)
}

/// `W = (R b)' (R V R')^-1 (R b)` with `b = vec(beta)` stacked by equation
/// and `V = sigma_ls (x) (X'X)^-1`, all from normal equations.
pub fn restriction_wald(x: &DMatrix<f64>, y: &DMatrix<f64>, rows: &[usize]) -> f64 {
    let (beta, xtx_inv) = ols_normal_equations(x, y);
    let u = y - x * &beta;
    let (n, m) = x.shape();
    let k = y.ncols();
    let sigma = u.transpose() * &u / (n - m) as f64;
    let b = DVector::from_iterator(
        k * m,
        beta.column_iter()
            .flat_map(|c| c.iter().copied().collect::<Vec<_>>()),
    );
    let v = sigma.kronecker(&xtx_inv);
    let mut r = DMatrix::zeros(rows.len(), k * m);
    for (a, &row) in rows.iter().enumerate() {
        r[(a, row)] = 1.0;
    }
    let rb = &r * b;
    let rvr = &r * v * r.transpose();
    (rb.transpose() * rvr.try_inverse().unwrap() * rb)[(0, 0)]
}

fn ln_det_ml(u: &DMatrix<f64>) -> f64 {
    (u.transpose() * u / u.nrows() as f64).determinant().ln()
}

/// Edgeworth-corrected LR from separate restricted and auxiliary fits.
pub fn two_fit_lre(x: &DMatrix<f64>, u: &DMatrix<f64>, lags: &[usize]) -> f64 {
    let (n, kx) = x.shape();
    let k = u.ncols();
    let r = k * lags.len();
    let mut aux = DMatrix::zeros(n, kx + r);
    aux.columns_mut(0, kx).copy_from(x);
    for (a, &h) in lags.iter().enumerate() {
        for t in h..n {
            for j in 0..k {
                aux[(t, kx + a * k + j)] = u[(t - h, j)];
            }
        }
    }
    let (br, _) = ols_normal_equations(x, u);
    let (bu, _) = ols_normal_equations(&aux, u);
    let er = u - x * br;
    let eu = u - &aux * bu;
    let big_n = n as f64 - kx as f64 - r as f64 - 0.5 * (k as f64 - r as f64 + 1.0);
    big_n * (ln_det_ml(&er) - ln_det_ml(&eu))
}
