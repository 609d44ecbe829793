//! Post-estimation checks: block exogeneity, stability, residual
//! cross-correlations and serial-correlation LM tests.

mod crosscorr;
mod granger;
mod lm;
mod stability;

pub use crosscorr::{cross_correlations, residual_cross_correlations, CrossCorrResult};
pub use granger::{granger_wald, wald_block, WaldBlockResult, ALL_EXCLUDED};
pub use lm::{serial_correlation_lm, serial_correlation_lm_with, LmResult, LmRow, Presample};
pub use stability::{stability_of, stability_roots, Root, StabilityResult};
