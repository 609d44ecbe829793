//! Recursive (Cholesky) identification: impulse responses, forecast-error
//! variance decomposition and historical decomposition.
//!
//! Shocks carry the name of the variable they are ordered with. The impact
//! matrix `B` satisfies `B B' = sigma_ls` and is lower triangular once rows
//! and columns are permuted into the chosen ordering.

mod bands;
mod decomposition;
mod irf;

pub use bands::{irf_confidence_bands, IrfBands};
pub use decomposition::{
    historical_decomposition, variance_decomposition, FevdTable, HistoricalDecomposition,
    HistoricalPath, VarianceDecomposition,
};
pub use irf::{impact_matrix, impulse_responses, ma_coefficients, ImpulseResponses};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::var::VarEstimate;

/// Default horizon, matching a ten-period variance decomposition.
pub const DEFAULT_HORIZON: usize = 10;

/// Everything derived from one estimate under one ordering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuralSet {
    pub irf: ImpulseResponses,
    pub fevd: VarianceDecomposition,
    pub historical: HistoricalDecomposition,
}

impl StructuralSet {
    pub fn compute(est: &VarEstimate, horizon: usize, ordering: &[usize]) -> Result<Self> {
        Ok(Self {
            irf: impulse_responses(est, horizon, ordering)?,
            fevd: variance_decomposition(est, horizon, ordering)?,
            historical: historical_decomposition(est, ordering)?,
        })
    }
}
