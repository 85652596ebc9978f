//! Scalar special functions and root/quadrature utilities.
//!
//! Everything here is a pure function of its arguments. Accuracy statements
//! hold on the audited parameter boxes only; outside them the functions
//! return [`SpecfunError::OutOfRange`].

mod bessel;
mod gamma;
mod pcf;
mod quad;
mod roots;

pub use bessel::bessel_i;
pub use pcf::{pcf_d, pcf_d_prime, pcf_eval, PcfEval};
pub use quad::integrate;
pub use roots::{find_root, BracketedRoot};

pub(crate) use roots::{brent_min, find_root_xtol};

use thiserror::Error;

/// Errors from special-function evaluation and the scalar utilities.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    /// Arguments outside the audited parameter box.
    #[error("argument outside supported range: {0}")]
    OutOfRange(String),
    /// An internal series, quadrature or iteration failed to meet tolerance.
    #[error("failed to converge: {0}")]
    NonConvergence(String),
    /// Root bracket does not straddle a sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo)={flo:e}, f(hi)={fhi:e}")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },
}

pub type Result<T> = std::result::Result<T, SpecfunError>;
