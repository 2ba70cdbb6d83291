//! One- and two-dimensional integration engines.
//!
//! * (0,1) with algebraic weight `x^(α−1)(1−x)^(β−1)`: tanh-sinh.
//! * (0,∞) with weight `x^(s−1)e^(−x)`: exp-sinh with a verified truncation point.
//! * The quadrant `x, y ≥ 0`: iterated tensor scheme in `u = y/(x+y)`, `s = x+y`.
//!
//! Weights are applied by the engine, so integrands are only sampled strictly
//! inside the open domain.

mod de;
mod quadrant;

pub use de::QuadNode;
pub use quadrant::{integrate_quadrant, integrate_quadrant_ordered, quadrant_with, IterOrder, QuadrantWeight};

pub(crate) use de::Sample;

use crate::error::{domain, Error, Result};
use crate::exprdsl::{Arity, FuncSpec};
use crate::scalar::{lit, Real};

use de::{default_span, integrate, scan_window, DeMap, HalfLineMap, RationalMap, UnitMap};

/// Tolerances and limits shared by all engines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    /// Refinement depth cap; level `k` uses step `2^-(k+1)`.
    pub max_levels: u32,
    /// Tail cutoff for semi-infinite domains, relative to the integral.
    pub trunc_eps: T,
    /// Inner integrals of a nested rule return their last estimate instead of
    /// failing; the outer rule absorbs the reported error.
    pub(crate) best_effort: bool,
}

pub const MAX_LEVELS_CAP: u32 = 20;

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        Self { rel_tol: lit(1e-10), abs_tol: T::zero(), max_levels: 12, trunc_eps: lit(1e-16), best_effort: false }
    }
}

impl<T: Real> QuadConfig<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_levels(mut self, max_levels: u32) -> Self {
        self.max_levels = max_levels;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero()) {
            return domain("rel_tol must be positive");
        }
        if !(self.abs_tol >= T::zero()) {
            return domain("abs_tol must be non-negative");
        }
        if !(self.trunc_eps > T::zero()) {
            return domain("trunc_eps must be positive");
        }
        if self.max_levels == 0 || self.max_levels > MAX_LEVELS_CAP {
            return domain(format!("max_levels must lie in 1..={MAX_LEVELS_CAP}"));
        }
        Ok(())
    }

    /// Tighter configuration for integrals nested inside an outer rule.
    pub(crate) fn nested(&self) -> Self {
        let floor = lit::<T>(64.0) * T::epsilon();
        Self {
            rel_tol: (self.rel_tol * lit(0.01)).max(floor),
            abs_tol: self.abs_tol * lit(0.01),
            best_effort: true,
            ..*self
        }
    }

    /// Tolerance band `max(rel_tol·|v|, abs_tol)`.
    pub fn band(&self, v: T) -> T {
        (self.rel_tol * v.abs()).max(self.abs_tol)
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Path {
    Direct2d,
    Factorized,
    ClosedForm,
    Series,
}

impl Path {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Direct2d => "direct2d",
            Self::Factorized => "factorized",
            Self::ClosedForm => "closed_form",
            Self::Series => "series",
        }
    }
}

/// A value with its error estimate and diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T> {
    pub value: T,
    pub err_est: T,
    pub n_evals: u64,
    pub truncation_point: Option<T>,
    pub path: Path,
    /// Deepest refinement level used by the outermost rule.
    pub levels: u32,
    /// Set when the evaluation sits in a slowly converging regime.
    pub slow: bool,
}

impl<T: Real> EvalResult<T> {
    pub fn exact(value: T, path: Path) -> Self {
        Self { value, err_est: T::zero(), n_evals: 1, truncation_point: None, path, levels: 0, slow: false }
    }

    /// Product of two independent results, with first-order error propagation.
    pub fn product(&self, other: &Self, path: Path) -> Self {
        Self {
            value: self.value * other.value,
            err_est: self.err_est * other.value.abs() + other.err_est * self.value.abs() + self.err_est * other.err_est,
            n_evals: self.n_evals + other.n_evals,
            truncation_point: max_opt(self.truncation_point, other.truncation_point),
            path,
            levels: self.levels.max(other.levels),
            slow: self.slow || other.slow,
        }
    }

    /// Sum of two results; errors add.
    pub fn plus(&self, other: &Self) -> Self {
        Self {
            value: self.value + other.value,
            err_est: self.err_est + other.err_est,
            n_evals: self.n_evals + other.n_evals,
            truncation_point: max_opt(self.truncation_point, other.truncation_point),
            path: self.path,
            levels: self.levels.max(other.levels),
            slow: self.slow || other.slow,
        }
    }

    /// Multiplies value and error by a constant.
    pub fn scaled(mut self, c: T) -> Self {
        self.value = self.value * c;
        self.err_est = self.err_est * c.abs();
        self
    }
}

pub(crate) fn max_opt<T: Real>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(p), Some(q)) => Some(p.max(q)),
        (p, None) => p,
        (None, q) => q,
    }
}

fn check_positive<T: Real>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be positive and finite, got {v}"))
    }
}

fn ensure_unary<T: Real>(h: &FuncSpec<T>) -> Result<()> {
    if h.arity() == Arity::One {
        Ok(())
    } else {
        domain("one-variable function expected")
    }
}

/// `∫₀¹ f(node) x^(α−1)(1−x)^(β−1) dx` for an integrand seeing the full node.
pub fn beta_weighted_with<T, F>(alpha: T, beta: T, cfg: &QuadConfig<T>, mut f: F) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(&QuadNode<T>) -> Result<T>,
{
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    cfg.validate()?;
    Ok(beta_core(alpha, beta, cfg, |n| f(n).map(Sample::exact))?.0)
}

pub(crate) fn beta_core<T, F>(alpha: T, beta: T, cfg: &QuadConfig<T>, f: F) -> Result<(EvalResult<T>, T)>
where
    T: Real,
    F: FnMut(&QuadNode<T>) -> Result<Sample<T>>,
{
    let map = UnitMap { alpha, beta };
    let (t0, t1) = default_span::<T>();
    let window = scan_window(&map, t0, t1);
    let out = integrate(&map, &window, cfg, f)?;
    Ok((
        EvalResult {
            value: out.value,
            err_est: out.err_est,
            n_evals: out.n_evals,
            truncation_point: None,
            path: Path::Direct2d,
            levels: out.levels,
            slow: false,
        },
        out.abs_value,
    ))
}

/// `∫₀^∞ f(node) y^(α−1) (1+y)^(−α−β) dy`, the half-line form of the beta weight.
pub fn rational_weighted_with<T, F>(alpha: T, beta: T, cfg: &QuadConfig<T>, mut f: F) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(&QuadNode<T>) -> Result<T>,
{
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    cfg.validate()?;
    let map = RationalMap { alpha, beta };
    let (t0, t1) = default_span::<T>();
    let window = scan_window(&map, t0, t1);
    let out = integrate(&map, &window, cfg, |n| f(n).map(Sample::exact))?;
    Ok(EvalResult {
        value: out.value,
        err_est: out.err_est,
        n_evals: out.n_evals,
        truncation_point: None,
        path: Path::Factorized,
        levels: out.levels,
        slow: false,
    })
}

/// Initial truncation radius for the weight `x^(s−1)e^(−x)`.
pub fn initial_truncation<T: Real>(s: T, trunc_eps: T) -> T {
    lit::<T>(40.0).max(s + lit::<T>(20.0) * s.sqrt() - trunc_eps.ln())
}

const MAX_TRUNCATION_DOUBLINGS: u32 = 8;

/// `∫₀^∞ f(node) x^(s−1) e^(−x) dx` for an integrand seeing the full node.
pub fn gamma_weighted_with<T, F>(s: T, cfg: &QuadConfig<T>, mut f: F) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(&QuadNode<T>) -> Result<T>,
{
    check_positive("s", s)?;
    cfg.validate()?;
    gamma_core(s, cfg, |n| f(n).map(Sample::exact))
}

pub(crate) fn gamma_core<T, F>(s: T, cfg: &QuadConfig<T>, mut f: F) -> Result<EvalResult<T>>
where
    T: Real,
    F: FnMut(&QuadNode<T>) -> Result<Sample<T>>,
{
    let map = HalfLineMap { s };
    let (t0, _) = default_span::<T>();
    let mut radius = initial_truncation(s, cfg.trunc_eps);
    let mut extra_evals = 0u64;
    for _ in 0..=MAX_TRUNCATION_DOUBLINGS {
        let t_r = HalfLineMap::t_of_x(radius);
        let mut window = scan_window(&map, t0, t_r);
        window.hi = t_r;
        let out = integrate(&map, &window, cfg, &mut f)?;

        // envelope x^(s-1) e^(-x) max|h| sampled on [R/2, R]
        let mut h_max = T::zero();
        for frac in [0.5, 0.75, 1.0] {
            let x = radius * lit(frac);
            let node = map.node(HalfLineMap::t_of_x(x));
            let sample = f(&node)?;
            extra_evals += sample.evals;
            h_max = h_max.max(sample.value.abs());
        }
        let envelope = ((s - T::one()) * radius.ln() - radius).exp() * h_max;
        let scale = out.value.abs().max(out.abs_value).max(cfg.abs_tol);
        if envelope <= cfg.trunc_eps * scale || scale == T::zero() {
            return Ok(EvalResult {
                value: out.value,
                err_est: out.err_est + envelope,
                n_evals: out.n_evals + extra_evals,
                truncation_point: Some(radius),
                path: Path::Direct2d,
                levels: out.levels,
                slow: false,
            });
        }
        radius = radius + radius;
    }
    Err(Error::NonConvergent {
        err_est: f64::INFINITY,
        tol: cfg.trunc_eps.to_f64().unwrap_or(0.0),
        levels: cfg.max_levels,
    })
}

/// `∫₀¹ h(x) x^(α−1)(1−x)^(β−1) dx`.
pub fn integrate_01_weighted<T: Real>(
    h: &FuncSpec<T>,
    alpha: T,
    beta: T,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    ensure_unary(h)?;
    if h.is_one() {
        return beta_weighted_with(alpha, beta, cfg, |_| Ok(T::one()));
    }
    beta_weighted_with(alpha, beta, cfg, |n| Ok(h.eval1(n.x)?))
}

/// `∫₀^∞ h(x) x^(s−1) e^(−x) dx`.
pub fn integrate_0inf_weighted<T: Real>(h: &FuncSpec<T>, s: T, cfg: &QuadConfig<T>) -> Result<EvalResult<T>> {
    ensure_unary(h)?;
    gamma_weighted_with(s, cfg, |n| Ok(h.eval1(n.x)?))
}
