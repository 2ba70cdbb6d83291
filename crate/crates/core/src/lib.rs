//! Generalized gamma and beta functions, the two-dimensional generalized gamma
//! function on the positive quadrant, and the identities that relate them.
//!
//! The central fact exploited throughout is that for a kernel of the form
//! `Q(x, y) = f(y/(x+y))·g(x+y)` the quadrant integral
//!
//! ```text
//! ∬ f(y/(x+y)) g(x+y) y^(α−1) x^(β−1) (x+y)^γ e^(−x−y) dy dx
//! ```
//!
//! equals `B_f(α, β)·Γ_g(α+β+γ)`, a product of two one-dimensional integrals.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod damped;
pub mod error;
pub mod exprdsl;
pub mod genspecial;
pub mod hyperg;
pub mod logmoments;
pub mod oracle;
pub mod quadcore;
pub mod scalar;
pub mod seriesrep;
pub mod special;

pub use error::{Error, Result};
pub use exprdsl::{Arity, Expr, FuncSpec};
pub use genspecial::{Mode, Params};
pub use quadcore::{EvalResult, Path, QuadConfig};
pub use scalar::Real;

pub type FuncSpec64 = FuncSpec<f64>;
pub type QuadConfig64 = QuadConfig<f64>;
pub type EvalResult64 = EvalResult<f64>;
pub type Params64 = Params<f64>;
pub type DampParams64 = damped::DampParams<f64>;
pub type SeriesSpec64 = seriesrep::SeriesSpec<f64>;
pub type SeparabilityReport64 = exprdsl::SeparabilityReport<f64>;

pub type FuncSpec32 = FuncSpec<f32>;
pub type QuadConfig32 = QuadConfig<f32>;
pub type EvalResult32 = EvalResult<f32>;
