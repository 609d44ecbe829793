//! VAR(p) estimation, lag selection and simulation.

mod estimate;
mod lag_order;
mod simulate;

pub use estimate::{
    estimate_var, estimate_var_matrix, CoefRow, EquationStats, VarEstimate, VarSpec,
};
pub use lag_order::{select_lag_order, select_lag_order_matrix, LagRow, LagSelection, StarredLags};
pub use simulate::{companion_matrix, simulate_var, VarProcess};
