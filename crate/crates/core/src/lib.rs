//! Mittag-Leffler functions, discrete fractional calculus, spectral counting
//! functions and weak-Lorentz decay bounds for fractional evolution equations.
//!
//! Parameter guards are written as `!(x > 0.0)` on purpose so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod dd;
pub mod error;
pub mod evolution;
pub mod frac_calculus;
pub mod gamma;
pub mod harness;
pub mod lorentz;
pub mod mittag_leffler;
pub mod spectral;

pub use error::{Error, Result};
