//! Gauss hypergeometric function `₂F₁(a, b; c; z)` through its Euler integral,
//! and the generalization `F_f` with an extra weight `f(t)`, both also
//! expressed as two-dimensional generalized gamma integrals.

use crate::error::{domain, Error, Result};
use crate::exprdsl::{Arity, FuncSpec};
use crate::genspecial::{beta_f, gamma2d_omega, gamma_g, Params};
use crate::quadcore::{quadrant_with, EvalResult, IterOrder, Path, QuadConfig, QuadrantWeight};
use crate::scalar::{lit, Real};
use crate::special::{ln_beta, ln_gamma};

/// Lower end of the near-singular band `z ∈ [SLOW_Z, 1)`.
pub const SLOW_Z: f64 = 0.95;
/// Relative tolerance used inside the near-singular band.
pub const SLOW_REL_TOL: f64 = 1e-6;

/// Parameters `a, b, c, z` with `c > b > 0` and `z < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub z: T,
}

impl<T: Real> HypParams<T> {
    pub fn new(a: T, b: T, c: T, z: T) -> Result<Self> {
        if ![a, b, c, z].iter().all(|v| v.is_finite()) {
            return domain("hypergeometric parameters must be finite");
        }
        if !(b > T::zero()) {
            return domain(format!("b must be > 0, got {b}"));
        }
        if !(c > b) {
            return domain(format!("c must exceed b, got c = {c}, b = {b}"));
        }
        if !(z < T::one()) {
            return domain(format!("z must be < 1, got {z}"));
        }
        Ok(Self { a, b, c, z })
    }

    /// Whether `z` lies in the slowly converging band below 1.
    pub fn is_slow(&self) -> bool {
        self.z >= lit(SLOW_Z)
    }

    fn config(&self, cfg: &QuadConfig<T>) -> QuadConfig<T> {
        if self.is_slow() {
            cfg.with_rel_tol(cfg.rel_tol.max(lit(SLOW_REL_TOL)))
        } else {
            *cfg
        }
    }

    /// `(1 − t z)^(−a)`.
    fn kernel(&self, t: T) -> T {
        (T::one() - t * self.z).powf(-self.a)
    }

    /// `Γ(c) / (Γ(b) Γ(c−b))`.
    fn prefactor(&self) -> T {
        (-ln_beta(self.b, self.c - self.b)).exp()
    }
}

fn finish<T: Real>(r: EvalResult<T>, hp: &HypParams<T>, factor: T) -> EvalResult<T> {
    let mut r = r.scaled(factor);
    r.slow = hp.is_slow();
    r
}

/// `₂F₁(a,b;c;z) = Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ t^(b−1)(1−t)^(c−b−1)(1−tz)^(−a) dt`.
pub fn hyp2f1<T: Real>(a: T, b: T, c: T, z: T, cfg: &QuadConfig<T>) -> Result<EvalResult<T>> {
    let hp = HypParams::new(a, b, c, z)?;
    let k = FuncSpec::from_fn1("(1-t*z)^(-a)", move |t| hp.kernel(t));
    let r = beta_f(&k, b, c - b, &hp.config(cfg))?;
    Ok(finish(r, &hp, hp.prefactor()))
}

/// `₂F₁` as `1/(Γ(b)Γ(c−b)) ∬ (x+y(1−z))^(−a)(x+y)^a y^(b−1) x^(c−b−1) e^(−x−y)`.
pub fn hyp2f1_gamma2d<T: Real>(a: T, b: T, c: T, z: T, cfg: &QuadConfig<T>) -> Result<EvalResult<T>> {
    let hp = HypParams::new(a, b, c, z)?;
    let omega = FuncSpec::from_fn2("(x+y(1-z))^(-a)(x+y)^a", move |y: T, x: T| {
        let s = x + y;
        ((x + y * (T::one() - hp.z)) / s).powf(-hp.a)
    });
    let p = Params::new(b, c - b, T::zero())?;
    let r = gamma2d_omega(&omega, &p, &hp.config(cfg), false)?;
    let factor = (-(ln_gamma(b) + ln_gamma(c - b))).exp();
    Ok(finish(r, &hp, factor))
}

/// Evaluation route for [`hyp2f1_f`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypRoute {
    /// One-dimensional Euler-type integral.
    Euler,
    /// Quadrant integral with radial weight `g`, normalized by `Γ_g(c+γ)`.
    WithG,
    /// Quadrant integral with `g ≡ 1`, normalized by `Γ(c+γ)`.
    Plain,
}

/// `F_f(a,b;c;z) = Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ t^(b−1)(1−t)^(c−b−1)(1−tz)^(−a) f(t) dt`.
///
/// The two quadrant routes evaluate
/// `∬ f(u)(1−uz)^(−a) g(s) y^(b−1) x^(c−b−1) (x+y)^γ e^(−x−y)` with `u = y/(x+y)`,
/// `s = x+y`, and divide by the radial normalization; `g` and `γ` cancel.
#[allow(clippy::too_many_arguments)]
pub fn hyp2f1_f<T: Real>(
    f: &FuncSpec<T>,
    a: T,
    b: T,
    c: T,
    z: T,
    g: &FuncSpec<T>,
    gamma: T,
    route: HypRoute,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    let hp = HypParams::new(a, b, c, z)?;
    if f.arity() != Arity::One || g.arity() != Arity::One {
        return domain("f and g must be one-variable functions");
    }
    let cfg = hp.config(cfg);
    match route {
        HypRoute::Euler => {
            let fs = f.clone();
            let k = FuncSpec::from_fn1("f(t)(1-t*z)^(-a)", move |t| fs.eval1(t).unwrap_or(T::nan()) * hp.kernel(t));
            // surface evaluation errors of f before the quadrature masks them as NaN
            f.eval1(lit(0.5))?;
            let r = beta_f(&k, b, c - b, &cfg)?;
            Ok(finish(r, &hp, hp.prefactor()))
        }
        HypRoute::WithG | HypRoute::Plain => {
            let p = Params::new(b, c - b, gamma)?;
            let plain = route == HypRoute::Plain;
            let weight = QuadrantWeight::new(p.alpha, p.beta, p.gamma);
            let r = quadrant_with(weight, IterOrder::AngleOuter, &cfg, |un, sn| {
                let gv = if plain { T::one() } else { g.eval1(sn.x)? };
                Ok(f.eval1(un.x)? * hp.kernel(un.x) * gv)
            })?;
            let norm = if plain {
                let v = (ln_gamma(c + gamma)).exp();
                EvalResult::exact(v, Path::ClosedForm)
            } else {
                gamma_g(g, c + gamma, &cfg)?
            };
            if norm.value.abs() <= norm.err_est || norm.value == T::zero() {
                return Err(Error::DivisionByZero {
                    value: norm.value.to_f64().unwrap_or(f64::NAN),
                    err_est: norm.err_est.to_f64().unwrap_or(f64::NAN),
                });
            }
            let q = r.value / norm.value;
            let rel = r.err_est / r.value.abs().max(T::min_positive_value()) + norm.err_est / norm.value.abs();
            let combined = EvalResult { value: q, err_est: q.abs() * rel, n_evals: r.n_evals + norm.n_evals, ..r };
            Ok(finish(combined, &hp, (ln_gamma(c) - ln_gamma(b) - ln_gamma(c - b)).exp()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_LN2: f64 = 1.386_294_361_119_890_6;

    fn u(t: &str) -> FuncSpec<f64> {
        FuncSpec::parse_unary(t).unwrap()
    }

    #[test]
    fn domain_checks() {
        let c = QuadConfig::default();
        assert!(hyp2f1::<f64>(1.0, 1.0, 1.0, 0.5, &c).is_err());
        assert!(hyp2f1::<f64>(1.0, 0.0, 2.0, 0.5, &c).is_err());
        assert!(hyp2f1::<f64>(1.0, 1.0, 2.0, 1.0, &c).is_err());
    }

    #[test]
    fn euler_examples() {
        let c = QuadConfig::default();
        assert!((hyp2f1::<f64>(0.7, 1.3, 2.9, 0.0, &c).unwrap().value - 1.0).abs() < 1e-12);
        assert!((hyp2f1::<f64>(1.0, 1.0, 2.0, 0.5, &c).unwrap().value - TWO_LN2).abs() < 1e-10);
        let r = hyp2f1::<f64>(0.5, 1.5, 2.5, -1.0, &c).unwrap();
        assert!((r.value - 0.799_259_963_030_328).abs() < 1e-10);
        let r = hyp2f1::<f64>(1.0, 1.0, 2.0, 0.97, &c).unwrap();
        assert!(r.slow);
        assert!((r.value - (-(0.03f64).ln() / 0.97)).abs() < 1e-6 * r.value);
    }

    #[test]
    fn gamma2d_examples() {
        let c = QuadConfig::default();
        assert!((hyp2f1_gamma2d::<f64>(1.0, 1.0, 2.0, 0.0, &c).unwrap().value - 1.0).abs() < 1e-10);
        assert!((hyp2f1_gamma2d::<f64>(1.0, 1.0, 2.0, 0.5, &c).unwrap().value - TWO_LN2).abs() < 1e-9);
        let r = hyp2f1_gamma2d::<f64>(2.0, 1.0, 3.0, -0.5, &c).unwrap();
        assert!((r.value - 0.756_279_135_134_684_9).abs() < 1e-8);
    }

    #[test]
    fn generalized_examples() {
        let c = QuadConfig::default();
        let one = u("1");
        for route in [HypRoute::Euler, HypRoute::WithG, HypRoute::Plain] {
            let r = hyp2f1_f(&one, 1.0, 1.0, 2.0, 0.5, &one, 0.0, route, &c).unwrap();
            assert!((r.value - TWO_LN2).abs() < 1e-9, "{route:?}");
            let r = hyp2f1_f(&u("t"), 1.0, 1.0, 2.0, 0.5, &u("s"), 1.0, route, &c).unwrap();
            assert!((r.value - 0.772_588_722_239_781_2).abs() < 1e-9, "{route:?} {r:?}");
        }
        let r = hyp2f1_f(&one, 1.0, 1.0, 2.0, 0.5, &u("s"), 1.0, HypRoute::WithG, &c).unwrap();
        assert!((r.value - TWO_LN2).abs() < 1e-9);
    }

    #[test]
    fn zero_g_is_rejected() {
        let c = QuadConfig::default();
        let r = hyp2f1_f(&u("1"), 1.0, 1.0, 2.0, 0.5, &u("0"), 0.0, HypRoute::WithG, &c);
        assert!(r.is_err());
    }
}
