//! Quadrant integrals `∬_{x,y≥0} K · y^(ν−1) x^(ω−1) (x+y)^λ e^(−rate·(x+y)) dy dx`.
//!
//! With `x = s(1−u)`, `y = s·u` (Jacobian `s`) the weight splits into
//! `u^(ν−1)(1−u)^(ω−1)` on (0,1) and `s^(ν+ω+λ−1) e^(−rate·s)` on (0,∞); the
//! kernel itself is sampled at every `(u, s)` pair of the tensor grid.

use super::de::{QuadNode, Sample};
use super::{beta_core, check_positive, gamma_core, max_opt, EvalResult, Path, QuadConfig};
use crate::error::{domain, Result};
use crate::exprdsl::{Arity, FuncSpec};
use crate::scalar::Real;

/// Which variable the outer rule runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterOrder {
    /// Outer rule over `u`, inner over `s`.
    AngleOuter,
    /// Outer rule over `s`, inner over `u`.
    RadialOuter,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrantWeight<T> {
    pub nu: T,
    pub omega: T,
    pub lam: T,
    /// Exponential decay rate; 1 for the plain quadrant integral.
    pub rate: T,
}

impl<T: Real> QuadrantWeight<T> {
    pub fn new(nu: T, omega: T, lam: T) -> Self {
        Self { nu, omega, lam, rate: T::one() }
    }

    fn validate(&self) -> Result<()> {
        check_positive("nu", self.nu)?;
        check_positive("omega", self.omega)?;
        check_positive("rate", self.rate)?;
        if !(self.lam >= T::zero()) || !self.lam.is_finite() {
            return domain(format!("lambda must be finite and >= 0, got {}", self.lam));
        }
        Ok(())
    }
}

fn radial_node<T: Real>(sigma: &QuadNode<T>, ln_rate: T, rate: T) -> QuadNode<T> {
    let s = sigma.x / rate;
    let ln_s = sigma.ln_x - ln_rate;
    QuadNode { x: s, xc: s, ln_x: ln_s, ln_xc: ln_s }
}

/// Iterated quadrant integral of `kernel(u_node, s_node)` against the weight.
pub fn quadrant_with<T, K>(
    weight: QuadrantWeight<T>,
    order: IterOrder,
    cfg: &QuadConfig<T>,
    kernel: K,
) -> Result<EvalResult<T>>
where
    T: Real,
    K: Fn(&QuadNode<T>, &QuadNode<T>) -> Result<T>,
{
    weight.validate()?;
    cfg.validate()?;
    let p = weight.nu + weight.omega + weight.lam;
    let rate = weight.rate;
    let ln_rate = rate.ln();
    let inner_cfg = cfg.nested();
    let mut trunc: Option<T> = None;

    let outer = match order {
        IterOrder::AngleOuter => {
            beta_core(weight.nu, weight.omega, cfg, |un| {
                let inner =
                    gamma_core(p, &inner_cfg, |sn| kernel(un, &radial_node(sn, ln_rate, rate)).map(Sample::exact))?;
                trunc = max_opt(trunc, inner.truncation_point);
                Ok(Sample { value: inner.value, err: inner.err_est, evals: inner.n_evals })
            })?
            .0
        }
        IterOrder::RadialOuter => {
            let r = gamma_core(p, cfg, |sn| {
                let s_node = radial_node(sn, ln_rate, rate);
                let (inner, _) =
                    beta_core(weight.nu, weight.omega, &inner_cfg, |un| kernel(un, &s_node).map(Sample::exact))?;
                Ok(Sample { value: inner.value, err: inner.err_est, evals: inner.n_evals })
            })?;
            trunc = r.truncation_point;
            r
        }
    };
    let scale = (-p * ln_rate).exp();
    Ok(EvalResult {
        value: outer.value * scale,
        err_est: outer.err_est * scale,
        n_evals: outer.n_evals,
        truncation_point: trunc.map(|r| r / rate),
        path: Path::Direct2d,
        levels: outer.levels,
        slow: false,
    })
}

/// `∬ Ω(y,x) y^(ν−1) x^(ω−1) (x+y)^λ e^(−x−y) dy dx` with the `u`-outer order.
pub fn integrate_quadrant<T: Real>(
    omega_fn: &FuncSpec<T>,
    nu: T,
    omega: T,
    lam: T,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    integrate_quadrant_ordered(omega_fn, nu, omega, lam, IterOrder::AngleOuter, cfg)
}

pub fn integrate_quadrant_ordered<T: Real>(
    omega_fn: &FuncSpec<T>,
    nu: T,
    omega: T,
    lam: T,
    order: IterOrder,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    if omega_fn.arity() != Arity::Two && !omega_fn.is_one() {
        return domain("two-variable function expected for the quadrant integrand");
    }
    quadrant_with(QuadrantWeight::new(nu, omega, lam), order, cfg, |un, sn| {
        let s = sn.x;
        Ok(omega_fn.eval2(s * un.x, s * un.xc)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> FuncSpec<f64> {
        FuncSpec::one(Arity::Two)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn classical_cases() {
        let c = QuadConfig::default();
        let r = integrate_quadrant(&one(), 1.0, 1.0, 0.0, &c).unwrap();
        assert!(rel(r.value, 1.0) < 1e-9, "{r:?}");
        assert_eq!(r.path, Path::Direct2d);
        let r = integrate_quadrant(&one(), 1.0, 1.0, 1.0, &c).unwrap();
        assert!(rel(r.value, 2.0) < 1e-9);
        let r = integrate_quadrant(&one(), 0.5, 0.5, 0.0, &c).unwrap();
        assert!(rel(r.value, std::f64::consts::PI) < 1e-9, "{r:?}");
    }

    #[test]
    fn order_insensitive() {
        let c = QuadConfig::default();
        let om = FuncSpec::parse_binary("x + y^2").unwrap();
        let a = integrate_quadrant_ordered(&om, 1.0, 1.0, 0.0, IterOrder::AngleOuter, &c).unwrap();
        let b = integrate_quadrant_ordered(&om, 1.0, 1.0, 0.0, IterOrder::RadialOuter, &c).unwrap();
        assert!(rel(a.value, 3.0) < 1e-9);
        assert!((a.value - b.value).abs() <= 5.0 * (a.err_est + b.err_est), "{a:?} {b:?}");
    }

    #[test]
    fn decay_rate() {
        // ∬ e^{-2(x+y)} = 1/4
        let c = QuadConfig::default();
        let w = QuadrantWeight { rate: 2.0, ..QuadrantWeight::new(1.0, 1.0, 0.0) };
        let r = quadrant_with(w, IterOrder::AngleOuter, &c, |_, _| Ok(1.0)).unwrap();
        assert!(rel(r.value, 0.25) < 1e-9);
    }

    #[test]
    fn rejects_bad_parameters() {
        let c = QuadConfig::default();
        assert!(integrate_quadrant(&one(), 0.0, 1.0, 0.0, &c).is_err());
        assert!(integrate_quadrant(&one(), 1.0, 1.0, -0.5, &c).is_err());
        let f = FuncSpec::parse_unary("u").unwrap();
        assert!(integrate_quadrant(&f, 1.0, 1.0, 0.0, &c).is_err());
    }
}
