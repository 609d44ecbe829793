use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::cholesky_lower;

/// Data-generating VAR(p): `y_t = c + sum_l A_l y_{t-l} + u_t`, `u_t ~ N(0, noise_cov)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VarProcess {
    pub coefs: Vec<DMatrix<f64>>,
    pub intercept: DVector<f64>,
    pub noise_cov: DMatrix<f64>,
}

impl VarProcess {
    pub fn nvars(&self) -> usize {
        self.intercept.len()
    }

    pub fn lag_order(&self) -> usize {
        self.coefs.len()
    }

    pub fn companion(&self) -> DMatrix<f64> {
        companion_matrix(&self.coefs)
    }

    /// Unconditional mean `(I - sum A_l)^-1 c`, if it exists.
    pub fn mean(&self) -> Option<DVector<f64>> {
        let k = self.nvars();
        let mut a = DMatrix::identity(k, k);
        for c in &self.coefs {
            a -= c;
        }
        a.lu().solve(&self.intercept)
    }
}

/// `[[A_1 .. A_p], [I 0]]`, size `Kp x Kp`.
pub fn companion_matrix(coefs: &[DMatrix<f64>]) -> DMatrix<f64> {
    let p = coefs.len();
    let k = coefs.first().map_or(0, |a| a.nrows());
    let mut c = DMatrix::zeros(k * p, k * p);
    for (l, a) in coefs.iter().enumerate() {
        c.view_mut((0, l * k), (k, k)).copy_from(a);
    }
    for i in 0..k * (p.saturating_sub(1)) {
        c[(k + i, i)] = 1.0;
    }
    c
}

/// Simulates `n` observations after discarding `burn_in` draws.
///
/// The first `p` values of the recursion are `initial` (most recent last) or
/// the unconditional mean when `initial` is `None`. A zero noise covariance
/// gives a deterministic path.
pub fn simulate_var<R: Rng + ?Sized>(
    process: &VarProcess,
    n: usize,
    burn_in: usize,
    initial: Option<&[DVector<f64>]>,
    rng: &mut R,
) -> Result<DMatrix<f64>> {
    let k = process.nvars();
    let p = process.lag_order();
    if process.coefs.iter().any(|a| a.shape() != (k, k)) || process.noise_cov.shape() != (k, k) {
        return Err(Error::InvalidInput(
            "inconsistent VAR process dimensions".into(),
        ));
    }
    let chol = if process.noise_cov.iter().all(|v| *v == 0.0) {
        None
    } else {
        Some(cholesky_lower(&process.noise_cov).ok_or_else(|| {
            Error::CholeskyFailed("noise covariance is not positive definite".into())
        })?)
    };

    let mut hist: Vec<DVector<f64>> = match initial {
        Some(init) => {
            if init.len() < p {
                return Err(Error::InvalidInput(format!(
                    "{} initial values for a VAR({p})",
                    init.len()
                )));
            }
            init[init.len() - p..].to_vec()
        }
        None => {
            let mean = process.mean().unwrap_or_else(|| DVector::zeros(k));
            vec![mean; p]
        }
    };

    let mut out = DMatrix::zeros(n, k);
    for step in 0..burn_in + n {
        let mut y = process.intercept.clone();
        for (l, a) in process.coefs.iter().enumerate() {
            y += a * &hist[hist.len() - 1 - l];
        }
        if let Some(l) = &chol {
            let z = DVector::from_fn(k, |_, _| rng.sample::<f64, _>(StandardNormal));
            y += l * z;
        }
        if step >= burn_in {
            out.set_row(step - burn_in, &y.transpose());
        }
        hist.push(y);
        if hist.len() > p {
            hist.remove(0);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_layout() {
        let a1 = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let a2 = DMatrix::from_row_slice(2, 2, &[5.0, 6.0, 7.0, 8.0]);
        let c = companion_matrix(&[a1, a2]);
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                1.0, 2.0, 5.0, 6.0, //
                3.0, 4.0, 7.0, 8.0, //
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0,
            ],
        );
        assert_eq!(c, expected);
    }
}
