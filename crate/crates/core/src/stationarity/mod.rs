//! Unit-root and cointegration tests.

mod adf;
mod adf_table;
mod johansen;
mod johansen_table;

pub use adf::{
    adf_critical_values, adf_p_value, adf_test, adf_test_values, schwert_max_lags,
    AdfDeterministic, AdfOptions, AdfResult, CriticalValues, LagRule, MIN_ADF_OBS,
};
pub use johansen::{
    johansen_matrix, johansen_p_value, johansen_test, johansen_test_labeled, JohansenDeterministic,
    JohansenInput, JohansenResult, JohansenStatistic, MAX_JOHANSEN_VARS,
};
