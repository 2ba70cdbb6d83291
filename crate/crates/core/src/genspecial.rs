//! Generalized gamma `Γ_g`, generalized beta `B_f`, the two-dimensional
//! generalized gamma function `Γ2D`, and the identities linking them,
//! exposed as residuals that vanish up to quadrature error.
//!
//! `Γ2D_{f,g}(α, β; γ) = ∬ f(y/(x+y)) g(x+y) y^(α−1) x^(β−1) (x+y)^γ e^(−x−y) dy dx`.

use crate::error::{domain, Error, Result};
use crate::exprdsl::{detect_separable, Arity, FuncSpec};
use crate::quadcore::{
    beta_core, gamma_weighted_with, integrate_01_weighted, integrate_0inf_weighted, integrate_quadrant,
    rational_weighted_with, EvalResult, Path, QuadConfig, Sample,
};
use crate::scalar::{lit, Real};

/// Exponents of the two-dimensional generalized gamma function.
///
/// For the general-Ω form the same triple plays the role of `(ν, ω, λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Real> Params<T> {
    pub fn new(alpha: T, beta: T, gamma: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha.is_finite()) {
            return domain(format!("alpha must be > 0, got {alpha}"));
        }
        if !(beta > T::zero() && beta.is_finite()) {
            return domain(format!("beta must be > 0, got {beta}"));
        }
        if !(gamma >= T::zero() && gamma.is_finite()) {
            return domain(format!("gamma must be >= 0, got {gamma}"));
        }
        Ok(Self { alpha, beta, gamma })
    }

    pub fn nu(&self) -> T {
        self.alpha
    }

    pub fn omega(&self) -> T {
        self.beta
    }

    pub fn lam(&self) -> T {
        self.gamma
    }

    /// `α + β + γ`, the argument of `Γ_g` in the factorization.
    pub fn total(&self) -> T {
        self.alpha + self.beta + self.gamma
    }

    pub fn shifted(&self, d_alpha: T, d_beta: T, d_gamma: T) -> Self {
        Self { alpha: self.alpha + d_alpha, beta: self.beta + d_beta, gamma: self.gamma + d_gamma }
    }

    pub fn swapped(&self) -> Self {
        Self { alpha: self.beta, beta: self.alpha, gamma: self.gamma }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Quadrant quadrature of the full kernel.
    Direct,
    /// `B_f(α, β)·Γ_g(α+β+γ)`.
    Factorized,
    /// Factorized whenever the kernel structure is known.
    Auto,
}

fn ensure_unary<T: Real>(name: &str, f: &FuncSpec<T>) -> Result<()> {
    if f.arity() == Arity::One {
        Ok(())
    } else {
        domain(format!("{name} must be a one-variable function"))
    }
}

fn as_path<T: Real>(mut r: EvalResult<T>, path: Path) -> EvalResult<T> {
    r.path = path;
    r
}

/// `Γ_g(ω) = ∫₀^∞ g(x) x^(ω−1) e^(−x) dx`.
pub fn gamma_g<T: Real>(g: &FuncSpec<T>, omega: T, cfg: &QuadConfig<T>) -> Result<EvalResult<T>> {
    ensure_unary("g", g)?;
    integrate_0inf_weighted(g, omega, cfg).map(|r| as_path(r, Path::Factorized))
}

/// `B_f(α, β) = ∫₀¹ f(x) x^(α−1) (1−x)^(β−1) dx`.
pub fn beta_f<T: Real>(f: &FuncSpec<T>, alpha: T, beta: T, cfg: &QuadConfig<T>) -> Result<EvalResult<T>> {
    ensure_unary("f", f)?;
    integrate_01_weighted(f, alpha, beta, cfg).map(|r| as_path(r, Path::Factorized))
}

/// `B_f(α, β)` through its half-line form `∫₀^∞ f(y/(1+y)) y^(α−1) (1+y)^(−α−β) dy`.
pub fn beta_f_halfline<T: Real>(f: &FuncSpec<T>, alpha: T, beta: T, cfg: &QuadConfig<T>) -> Result<EvalResult<T>> {
    ensure_unary("f", f)?;
    rational_weighted_with(alpha, beta, cfg, |n| {
        let y = n.x;
        // y/(1+y) written to stay accurate for large y
        let u = T::one() / (T::one() + y.recip());
        Ok(f.eval1(u)?)
    })
}

/// `Γ2D_{f,g}(α, β; γ)` by the requested path.
pub fn gamma2d<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
    mode: Mode,
) -> Result<EvalResult<T>> {
    ensure_unary("f", f)?;
    ensure_unary("g", g)?;
    match mode {
        Mode::Direct => {
            let kernel = FuncSpec::separable_kernel(f, g);
            integrate_quadrant(&kernel, p.alpha, p.beta, p.gamma, cfg)
        }
        Mode::Factorized | Mode::Auto => {
            let b = beta_f(f, p.alpha, p.beta, cfg)?;
            let gg = gamma_g(g, p.total(), cfg)?;
            Ok(b.product(&gg, Path::Factorized))
        }
    }
}

/// Both paths of [`gamma2d`]; disagreement beyond 100× the combined error is
/// reported as [`Error::Inconsistent`].
pub fn gamma2d_checked<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
) -> Result<(EvalResult<T>, EvalResult<T>)> {
    let direct = gamma2d(f, g, p, cfg, Mode::Direct)?;
    let factorized = gamma2d(f, g, p, cfg, Mode::Factorized)?;
    check_consistent(&direct, &factorized)?;
    Ok((direct, factorized))
}

pub(crate) fn check_consistent<T: Real>(direct: &EvalResult<T>, factorized: &EvalResult<T>) -> Result<()> {
    let scale = direct.value.abs().max(factorized.value.abs());
    let threshold = lit::<T>(100.0) * (direct.err_est + factorized.err_est) + lit::<T>(100.0) * T::epsilon() * scale;
    if (direct.value - factorized.value).abs() > threshold {
        return Err(Error::Inconsistent {
            direct: direct.value.to_f64().unwrap_or(f64::NAN),
            factorized: factorized.value.to_f64().unwrap_or(f64::NAN),
            threshold: threshold.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Detection settings used when a general Ω is re-routed to the factorized path.
pub const REROUTE_TOL: f64 = 1e-10;
pub const REROUTE_GRID: usize = 8;

/// `Γ_{ℝ²₊;Ω}(ν, ω; λ)` for a general two-variable `Ω(y, x)`.
///
/// With `reroute`, a kernel certified separable is evaluated through the
/// extracted factors instead of quadrant quadrature.
pub fn gamma2d_omega<T: Real>(
    omega: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
    reroute: bool,
) -> Result<EvalResult<T>> {
    if omega.arity() != Arity::Two && !omega.is_one() {
        return domain("Ω must be a two-variable function");
    }
    if reroute {
        let omega2 = if omega.is_one() { FuncSpec::one(Arity::Two) } else { omega.clone() };
        if let Ok(rep) = detect_separable(&omega2, lit(REROUTE_TOL), REROUTE_GRID) {
            if let (true, Some(f), Some(g)) = (rep.separable, rep.f_extracted, rep.g_extracted) {
                return gamma2d(&f, &g, p, cfg, Mode::Factorized);
            }
        }
    }
    integrate_quadrant(omega, p.nu(), p.omega(), p.lam(), cfg)
}

/// `Γ2D` in polar coordinates `x = r cos φ`, `y = r sin φ`, a cross-check path.
pub fn gamma2d_polar<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    ensure_unary("f", f)?;
    ensure_unary("g", g)?;
    cfg.validate()?;
    let s = p.total();
    let inner_cfg = cfg.nested();
    let half_pi = T::FRAC_PI_2();
    let mut trunc: Option<T> = None;
    // φ = (π/2)·t; sin^(α−1)φ cos^(β−1)φ = t^(α−1)(1−t)^(β−1) × smooth ratio factors
    let (outer, _) = beta_core(p.alpha, p.beta, cfg, |n| {
        let sin = (half_pi * n.x).sin();
        let cos = (half_pi * n.xc).sin();
        let sigma = sin + cos;
        let ratio = ((p.alpha - T::one()) * (sin / n.x).ln() + (p.beta - T::one()) * (cos / n.xc).ln()).exp();
        let fv = f.eval1(sin / sigma)?;
        let inner = gamma_weighted_with(s, &inner_cfg, |rn| {
            let r = rn.x;
            Ok(g.eval1(r * sigma)? * (-(r * (sigma - T::one()))).exp())
        })?;
        trunc = crate::quadcore::max_opt(trunc, inner.truncation_point);
        let c = half_pi * ratio * fv * sigma.powf(p.gamma);
        Ok(Sample { value: c * inner.value, err: c.abs() * inner.err_est, evals: inner.n_evals + 1 })
    })?;
    Ok(EvalResult { truncation_point: trunc, path: Path::Direct2d, ..outer })
}

/// Identity residual together with the magnitude it should be judged against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual<T> {
    pub value: T,
    /// Largest absolute term entering the identity.
    pub scale: T,
    /// Combined error estimate of all terms.
    pub err_est: T,
}

impl<T: Real> Residual<T> {
    pub fn from_terms(terms: &[(T, EvalResult<T>)]) -> Self {
        let mut value = T::zero();
        let mut scale = T::zero();
        let mut err = T::zero();
        for (c, r) in terms {
            let v = *c * r.value;
            value = value + v;
            scale = scale.max(v.abs());
            err = err + c.abs() * r.err_est;
        }
        Self { value, scale, err_est: err }
    }

    /// `|residual| / scale`.
    pub fn relative(&self) -> T {
        if self.scale == T::zero() {
            self.value.abs()
        } else {
            self.value.abs() / self.scale
        }
    }

    /// Whether `|residual|` is covered by the combined error (plus rounding).
    pub fn within_error(&self) -> bool {
        self.value.abs() <= self.err_est + lit::<T>(16.0) * T::epsilon() * self.scale
    }
}

/// `B_f(α,β) − B_f(α+1,β) − B_f(α,β+1)`.
pub fn residual_beta_recurrence<T: Real>(
    f: &FuncSpec<T>,
    alpha: T,
    beta: T,
    cfg: &QuadConfig<T>,
) -> Result<Residual<T>> {
    let one = T::one();
    let b00 = beta_f(f, alpha, beta, cfg)?;
    let b10 = beta_f(f, alpha + one, beta, cfg)?;
    let b01 = beta_f(f, alpha, beta + one, cfg)?;
    Ok(Residual::from_terms(&[(one, b00), (-one, b10), (-one, b01)]))
}

/// The two integration-by-parts forms of `∫₀¹ f′(x) x^α (1−x)^β dx`:
/// against `−α B_f(α,β+1) + β B_f(α+1,β)` and against `(α+β) B_f(α+1,β) − α B_f(α,β)`.
pub fn residual_beta_derivative_forms<T: Real>(
    f: &FuncSpec<T>,
    fprime: &FuncSpec<T>,
    alpha: T,
    beta: T,
    cfg: &QuadConfig<T>,
) -> Result<(Residual<T>, Residual<T>)> {
    let one = T::one();
    let lhs = beta_f(fprime, alpha + one, beta + one, cfg)?;
    let b00 = beta_f(f, alpha, beta, cfg)?;
    let b10 = beta_f(f, alpha + one, beta, cfg)?;
    let b01 = beta_f(f, alpha, beta + one, cfg)?;
    let first = Residual::from_terms(&[(one, lhs), (alpha, b01), (-beta, b10)]);
    let second = Residual::from_terms(&[(one, lhs), (-(alpha + beta), b10), (alpha, b00)]);
    Ok((first, second))
}

/// Sum rule `Γ2D(α+1,β;γ) + Γ2D(α,β+1;γ) − Γ2D(α,β;γ+1)` and, when `f′` is
/// supplied, `βΓ2D(α+1,β;γ+1) − αΓ2D(α,β+1;γ+1) − Γ2D_{f′,g}(α+1,β+1;γ)`.
pub fn residual_gamma2d_recurrence<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    fprime: Option<&FuncSpec<T>>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
    mode: Mode,
) -> Result<(Residual<T>, Option<Residual<T>>)> {
    let (zero, one) = (T::zero(), T::one());
    let a1 = gamma2d(f, g, &p.shifted(one, zero, zero), cfg, mode)?;
    let b1 = gamma2d(f, g, &p.shifted(zero, one, zero), cfg, mode)?;
    let c1 = gamma2d(f, g, &p.shifted(zero, zero, one), cfg, mode)?;
    let sum_rule = Residual::from_terms(&[(one, a1), (one, b1), (-one, c1)]);
    let derivative = match fprime {
        None => None,
        Some(fp) => {
            let a = gamma2d(f, g, &p.shifted(one, zero, one), cfg, mode)?;
            let b = gamma2d(f, g, &p.shifted(zero, one, one), cfg, mode)?;
            let d = gamma2d(fp, g, &p.shifted(one, one, zero), cfg, mode)?;
            Some(Residual::from_terms(&[(p.beta, a), (-p.alpha, b), (-one, d)]))
        }
    };
    Ok((sum_rule, derivative))
}

fn ratio<T: Real>(num: &EvalResult<T>, den: &EvalResult<T>) -> Result<EvalResult<T>> {
    if den.value.abs() <= den.err_est || den.value == T::zero() {
        return Err(Error::DivisionByZero {
            value: den.value.to_f64().unwrap_or(f64::NAN),
            err_est: den.err_est.to_f64().unwrap_or(f64::NAN),
        });
    }
    let q = num.value / den.value;
    let rel = num.err_est / num.value.abs().max(T::min_positive_value()) + den.err_est / den.value.abs();
    Ok(EvalResult { value: q, err_est: q.abs() * rel, n_evals: num.n_evals + den.n_evals, ..*num })
}

/// `Γ_g(s)/Γ_g(s+1) − Γ2D(α,β;γ)/Γ2D(α,β;γ+1)` with `s = α+β+γ`.
pub fn residual_ratio_property<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
    mode: Mode,
) -> Result<Residual<T>> {
    let one = T::one();
    let s = p.total();
    let g0 = gamma_g(g, s, cfg)?;
    let g1 = gamma_g(g, s + one, cfg)?;
    let d0 = gamma2d(f, g, p, cfg, mode)?;
    let d1 = gamma2d(f, g, &p.shifted(T::zero(), T::zero(), one), cfg, mode)?;
    let lhs = ratio(&g0, &g1)?;
    let rhs = ratio(&d0, &d1)?;
    Ok(Residual::from_terms(&[(one, lhs), (-one, rhs)]))
}

/// `Γ2D(α,β;γ+1) − (α+β+γ)Γ2D(α,β;γ) − Γ2D_{f,g′}(α,β;γ+1)`.
pub fn residual_gprime_recurrence<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    gprime: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
    mode: Mode,
) -> Result<Residual<T>> {
    let one = T::one();
    let up = p.shifted(T::zero(), T::zero(), one);
    let a = gamma2d(f, g, &up, cfg, mode)?;
    let b = gamma2d(f, g, p, cfg, mode)?;
    let c = gamma2d(f, gprime, &up, cfg, mode)?;
    Ok(Residual::from_terms(&[(one, a), (-p.total(), b), (-one, c)]))
}

/// `Γ2D_{f}(α,β;γ) − Γ2D_{f(1−·)}(β,α;γ)`.
pub fn residual_symmetry<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
    mode: Mode,
) -> Result<Residual<T>> {
    let a = gamma2d(f, g, p, cfg, mode)?;
    let b = gamma2d(&f.mirrored(), g, &p.swapped(), cfg, mode)?;
    Ok(Residual::from_terms(&[(T::one(), a), (-T::one(), b)]))
}
