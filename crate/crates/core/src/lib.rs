//! Vector autoregression toolkit for small annual macro panels.
//!
//! The crate covers the usual workflow for a handful of annual series per
//! country: assemble and interpolate the panel ([`series`]), test for unit
//! roots and cointegration ([`stationarity`]), choose a lag order and estimate
//! a VAR ([`var`]), check it ([`diagnostics`]), and read it through recursive
//! impulse responses, variance and historical decompositions
//! ([`structural`]). [`pipeline`] strings the steps together from a config
//! file and renders reports.

pub mod diagnostics;
mod dist;
pub mod error;
pub mod fixtures;
mod linalg;
pub mod pipeline;
pub mod series;
pub mod stationarity;
pub mod structural;
pub mod var;

pub use error::{Error, Result};
pub use series::{align_panel, AnnualSeries, CountryPanel};
