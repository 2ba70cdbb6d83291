use thiserror::Error;

use crate::exprdsl::{EvalError, ParseError};

/// Errors raised by the numerical operations of this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("quadrature did not converge: error estimate {err_est:e} above tolerance {tol:e} after {levels} levels")]
    NonConvergent { err_est: f64, tol: f64, levels: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("direct ({direct:e}) and factorized ({factorized:e}) evaluations disagree beyond {threshold:e}")]
    Inconsistent { direct: f64, factorized: f64, threshold: f64 },

    #[error("division by a value indistinguishable from zero: |{value:e}| <= {err_est:e}")]
    DivisionByZero { value: f64, err_est: f64 },

    #[error("|b| = {b} exceeds the direct-quadrature oscillation cap {cap}")]
    OscillationCap { b: f64, cap: f64 },

    #[error("separability test inconclusive: integrand vanishes at probe (u={u}, s={s})")]
    ZeroProbe { u: f64, s: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
