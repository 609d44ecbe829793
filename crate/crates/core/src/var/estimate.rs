use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cross_product, least_squares, log_det_spd};
use crate::series::CountryPanel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSpec {
    pub lag_order: usize,
    pub include_constant: bool,
}

impl VarSpec {
    pub fn new(lag_order: usize) -> Self {
        Self {
            lag_order,
            include_constant: true,
        }
    }

    /// Regressors per equation.
    pub fn regressors(&self, k: usize) -> usize {
        usize::from(self.include_constant) + k * self.lag_order
    }

    fn validate(&self, t: usize, k: usize) -> Result<()> {
        if self.lag_order == 0 {
            return Err(Error::InvalidInput(
                "VAR lag order must be at least 1".into(),
            ));
        }
        let m = self.regressors(k);
        if t <= self.lag_order || t - self.lag_order <= m {
            return Err(Error::InsufficientObservations(format!(
                "{} usable observations for {m} regressors per equation",
                t.saturating_sub(self.lag_order)
            )));
        }
        Ok(())
    }
}

/// One row of an equation's coefficient table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefRow {
    pub name: String,
    pub coefficient: f64,
    pub std_error: f64,
    pub t_stat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquationStats {
    pub dependent: String,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub ssr: f64,
    pub se_equation: f64,
    pub f_stat: f64,
    pub log_likelihood: f64,
    /// Variable-major order: `x(-1) .. x(-p)` for every variable, then `C`.
    pub coef_table: Vec<CoefRow>,
}

/// A fitted VAR(p).
///
/// Regressor layout per equation (row index into `beta`): the constant first
/// when present, then lag blocks `y_{t-1}, ..., y_{t-p}`, each in variable
/// order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarEstimate {
    pub variables: Vec<String>,
    pub spec: VarSpec,
    /// Shock ordering carried over from the panel.
    pub ordering: Vec<usize>,
    /// Year of the first fitted observation.
    pub start_year: i32,
    /// `A_1..A_p`; `A_l[(i, j)]` is the effect of `y_{j,t-l}` on `y_{i,t}`.
    pub coefs: Vec<DMatrix<f64>>,
    pub intercept: DVector<f64>,
    /// `m x K` coefficient matrix in regressor layout.
    pub beta: DMatrix<f64>,
    /// `(X'X)^-1`.
    pub xtx_inv: DMatrix<f64>,
    /// Full `T x K` data the model was fitted on, presample included.
    pub data: DMatrix<f64>,
    /// `T_eff x K` residuals.
    pub residuals: DMatrix<f64>,
    /// Residual covariance with divisor `T_eff`.
    pub sigma_ml: DMatrix<f64>,
    /// Residual covariance with divisor `T_eff - m`.
    pub sigma_ls: DMatrix<f64>,
    /// `kron(sigma_ls, (X'X)^-1)`, ordered equation by equation.
    pub coef_cov: DMatrix<f64>,
    pub per_equation: Vec<EquationStats>,
    /// System Gaussian log-likelihood; `None` when `sigma_ml` is singular.
    pub log_likelihood: Option<f64>,
}

impl VarEstimate {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn lag_order(&self) -> usize {
        self.spec.lag_order
    }

    /// Effective sample size `T_eff`.
    pub fn n_obs(&self) -> usize {
        self.residuals.nrows()
    }

    /// Regressors per equation.
    pub fn n_regressors(&self) -> usize {
        self.beta.nrows()
    }

    /// Row of `beta` holding the coefficient on `y_{var, t-lag}`.
    pub fn regressor_index(&self, var: usize, lag: usize) -> usize {
        usize::from(self.spec.include_constant) + (lag - 1) * self.nvars() + var
    }

    /// Regressor matrix `X` over the effective sample.
    pub fn regressors(&self) -> DMatrix<f64> {
        build_regressors(&self.data, self.spec)
    }

    pub fn fitted(&self) -> DMatrix<f64> {
        self.regressors() * &self.beta
    }

    /// Observed `y_t` over the effective sample.
    pub fn endog(&self) -> DMatrix<f64> {
        let p = self.lag_order();
        self.data.rows(p, self.data.nrows() - p).into_owned()
    }

    /// One-step-ahead recursion `c + sum_l A_l y_{t-l}` given the last `p`
    /// observations, most recent last.
    pub fn predict_next(&self, history: &[DVector<f64>]) -> DVector<f64> {
        let p = self.lag_order();
        let mut y = self.intercept.clone();
        for (l, a) in self.coefs.iter().enumerate() {
            y += a * &history[history.len() - 1 - l];
        }
        debug_assert!(history.len() >= p);
        y
    }

    /// Multi-step forecasts starting after the end of the data.
    pub fn forecast(&self, steps: usize) -> Vec<DVector<f64>> {
        let p = self.lag_order();
        let t = self.data.nrows();
        let mut hist: Vec<DVector<f64>> =
            (t - p..t).map(|i| self.data.row(i).transpose()).collect();
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            let next = self.predict_next(&hist);
            hist.push(next.clone());
            out.push(next);
        }
        out
    }
}

pub(crate) fn build_regressors(data: &DMatrix<f64>, spec: VarSpec) -> DMatrix<f64> {
    let (t, k) = data.shape();
    let p = spec.lag_order;
    let c = usize::from(spec.include_constant);
    let m = c + k * p;
    DMatrix::from_fn(t - p, m, |r, col| {
        if col < c {
            1.0
        } else {
            let l = (col - c) / k + 1;
            let j = (col - c) % k;
            data[(p + r - l, j)]
        }
    })
}

/// Estimates a VAR by equation-wise least squares on a complete panel.
pub fn estimate_var(panel: &CountryPanel, spec: VarSpec) -> Result<VarEstimate> {
    let data = panel.matrix()?;
    let mut est = estimate_var_matrix(&data, &panel.names(), spec)?;
    est.ordering = panel.ordering().to_vec();
    est.start_year = panel.start_year() + spec.lag_order as i32;
    Ok(est)
}

/// Estimates a VAR on a `T x K` data matrix.
pub fn estimate_var_matrix<S: AsRef<str>>(
    data: &DMatrix<f64>,
    names: &[S],
    spec: VarSpec,
) -> Result<VarEstimate> {
    let (t, k) = data.shape();
    if names.len() != k {
        return Err(Error::InvalidInput(format!(
            "{} names for {k} variables",
            names.len()
        )));
    }
    spec.validate(t, k)?;
    let p = spec.lag_order;
    let x = build_regressors(data, spec);
    let y = data.rows(p, t - p).into_owned();
    let fit = least_squares(&x, &y).map_err(|e| match e {
        Error::Collinear(_) => Error::collinear_in("VAR regressor matrix"),
        e => e,
    })?;
    let n = t - p;
    let m = x.ncols();
    let nf = n as f64;

    let sigma_ml = cross_product(&fit.residuals, nf);
    let sigma_ls = cross_product(&fit.residuals, (n - m) as f64);
    let coef_cov = sigma_ls.kronecker(&fit.xtx_inv);

    let c = usize::from(spec.include_constant);
    let coefs: Vec<DMatrix<f64>> = (0..p)
        .map(|l| DMatrix::from_fn(k, k, |i, j| fit.coef[(c + l * k + j, i)]))
        .collect();
    let intercept = if spec.include_constant {
        fit.coef.row(0).transpose()
    } else {
        DVector::zeros(k)
    };

    let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    let per_equation = (0..k)
        .map(|i| equation_stats(i, &names, &y, &fit.residuals, &fit.coef, &fit.xtx_inv, spec))
        .collect();
    let log_likelihood = system_log_likelihood(&sigma_ml, n).ok();

    Ok(VarEstimate {
        variables: names,
        spec,
        ordering: (0..k).collect(),
        start_year: p as i32,
        coefs,
        intercept,
        beta: fit.coef,
        xtx_inv: fit.xtx_inv,
        data: data.clone(),
        residuals: fit.residuals,
        sigma_ml,
        sigma_ls,
        coef_cov,
        per_equation,
        log_likelihood,
    })
}

/// Gaussian log-likelihood of a system with ML residual covariance `sigma`.
pub(crate) fn system_log_likelihood(sigma: &DMatrix<f64>, n: usize) -> Result<f64> {
    let k = sigma.nrows() as f64;
    let nf = n as f64;
    let ld = log_det_spd(sigma).ok_or_else(|| {
        Error::DegenerateCovariance("residual covariance is not positive definite".into())
    })?;
    Ok(-0.5 * nf * k * (1.0 + (2.0 * std::f64::consts::PI).ln()) - 0.5 * nf * ld)
}

fn equation_stats(
    i: usize,
    names: &[String],
    y: &DMatrix<f64>,
    resid: &DMatrix<f64>,
    beta: &DMatrix<f64>,
    xtx_inv: &DMatrix<f64>,
    spec: VarSpec,
) -> EquationStats {
    let n = y.nrows();
    let m = beta.nrows();
    let k = names.len();
    let nf = n as f64;
    let yi = y.column(i);
    let mean = yi.mean();
    let tss: f64 = yi.iter().map(|v| (v - mean).powi(2)).sum();
    let ssr = resid.column(i).norm_squared();
    let r2 = if tss > 0.0 { 1.0 - ssr / tss } else { 1.0 };
    let dof = (n - m) as f64;
    let adj = 1.0 - (1.0 - r2) * (nf - 1.0) / dof;
    let s2 = ssr / dof;
    let slopes = (m - usize::from(spec.include_constant)) as f64;
    let f_stat = if ssr > 0.0 {
        (r2 / slopes) / ((1.0 - r2) / dof)
    } else {
        f64::INFINITY
    };
    let log_likelihood = -0.5 * nf * (1.0 + (2.0 * std::f64::consts::PI).ln() + (ssr / nf).ln());

    let c = usize::from(spec.include_constant);
    let mut order: Vec<(String, usize)> = Vec::with_capacity(m);
    for (j, name) in names.iter().enumerate() {
        for l in 1..=spec.lag_order {
            order.push((format!("{name}(-{l})"), c + (l - 1) * k + j));
        }
    }
    if spec.include_constant {
        order.push(("C".to_string(), 0));
    }
    let coef_table = order
        .into_iter()
        .map(|(name, r)| {
            let coefficient = beta[(r, i)];
            let std_error = (s2 * xtx_inv[(r, r)]).sqrt();
            CoefRow {
                name,
                coefficient,
                std_error,
                t_stat: coefficient / std_error,
            }
        })
        .collect();

    EquationStats {
        dependent: names[i].clone(),
        r_squared: r2,
        adj_r_squared: adj,
        ssr,
        se_equation: s2.sqrt(),
        f_stat,
        log_likelihood,
        coef_table,
    }
}
