//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative threshold on the diagonal of R (after column scaling) below which
/// a regressor is treated as a linear combination of the others.
const RANK_TOL: f64 = 1e-10;

/// Multivariate least-squares fit `Y = X B + U`.
#[derive(Debug, Clone)]
pub(crate) struct LeastSquares {
    /// `m x K` coefficients; column `i` belongs to equation `i`.
    pub coef: DMatrix<f64>,
    /// `(X'X)^-1`.
    pub xtx_inv: DMatrix<f64>,
    pub residuals: DMatrix<f64>,
}

/// Least squares via Householder QR on unit-norm columns.
pub(crate) fn least_squares(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<LeastSquares> {
    let (n, m) = x.shape();
    if n < m {
        return Err(Error::InsufficientObservations(format!(
            "{n} observations for {m} regressors"
        )));
    }
    let norms: Vec<f64> = (0..m).map(|j| x.column(j).norm()).collect();
    if norms.iter().any(|&s| s == 0.0) {
        return Err(Error::collinear());
    }
    let xs = DMatrix::from_fn(n, m, |i, j| x[(i, j)] / norms[j]);
    let qr = xs.qr();
    let r = qr.r();
    let max_diag = (0..m).map(|j| r[(j, j)].abs()).fold(0.0, f64::max);
    if (0..m).any(|j| r[(j, j)].abs() <= RANK_TOL * max_diag) {
        return Err(Error::collinear());
    }
    let qty = qr.q().transpose() * y;
    let rs = r
        .solve_upper_triangular(&qty)
        .ok_or_else(Error::collinear)?;
    let r_inv = r
        .solve_upper_triangular(&DMatrix::identity(m, m))
        .ok_or_else(Error::collinear)?;
    let rr = &r_inv * r_inv.transpose();

    let coef = DMatrix::from_fn(m, y.ncols(), |i, k| rs[(i, k)] / norms[i]);
    let xtx_inv = DMatrix::from_fn(m, m, |i, j| rr[(i, j)] / (norms[i] * norms[j]));
    let residuals = y - x * &coef;
    Ok(LeastSquares {
        coef,
        xtx_inv,
        residuals,
    })
}

/// `U'U / divisor`.
pub(crate) fn cross_product(u: &DMatrix<f64>, divisor: f64) -> DMatrix<f64> {
    let mut s = u.transpose() * u / divisor;
    symmetrize(&mut s);
    s
}

pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

/// Lower Cholesky factor, or `None` if the matrix is not positive definite.
pub(crate) fn cholesky_lower(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    m.clone().cholesky().map(|c| c.l())
}

/// `ln det` of a symmetric positive-definite matrix.
pub(crate) fn log_det_spd(m: &DMatrix<f64>) -> Option<f64> {
    let l = cholesky_lower(m)?;
    Some(2.0 * l.diagonal().iter().map(|d| d.ln()).sum::<f64>())
}

/// `b' V^-1 b` for symmetric positive-definite `V`.
pub(crate) fn quadratic_form_inv(b: &DVector<f64>, v: &DMatrix<f64>) -> Option<f64> {
    let chol = v.clone().cholesky()?;
    let z = chol.l().solve_lower_triangular(b)?;
    Some(z.dot(&z))
}

/// Column-wise mean-centred copy.
pub(crate) fn demean_columns(u: &DMatrix<f64>) -> DMatrix<f64> {
    let n = u.nrows() as f64;
    let mut out = u.clone();
    for mut col in out.column_iter_mut() {
        let mean = col.sum() / n;
        col.add_scalar_mut(-mean);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_fit_and_inverse() {
        let x = DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 1.0, 1.0, 1.0, 2.0, 1.0, 3.0]);
        let y = DMatrix::from_row_slice(4, 1, &[1.0, 3.0, 5.0, 7.0]);
        let fit = least_squares(&x, &y).unwrap();
        assert!((fit.coef[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((fit.coef[(1, 0)] - 2.0).abs() < 1e-12);
        let xtx = x.transpose() * &x;
        let eye = xtx * &fit.xtx_inv;
        assert!((eye - DMatrix::<f64>::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn detects_collinearity() {
        let x = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 2.0, 4.0, 3.0, 6.0]);
        let y = DMatrix::from_row_slice(3, 1, &[1.0, 2.0, 3.0]);
        assert!(matches!(least_squares(&x, &y), Err(Error::Collinear(_))));
    }

    #[test]
    fn wildly_scaled_columns_are_not_flagged() {
        let x = DMatrix::from_fn(20, 3, |i, j| match j {
            0 => 1.0,
            1 => 1e-4 * (i as f64).sin(),
            _ => 1e4 * (i as f64 * 0.7).cos(),
        });
        let y = DMatrix::from_fn(20, 1, |i, _| i as f64);
        assert!(least_squares(&x, &y).is_ok());
    }
}
