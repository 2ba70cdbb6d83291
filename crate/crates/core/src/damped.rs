//! Quadrant integrals with Laplace-damped trigonometric factors
//! `e^(−a(x+y)) cos(b(x+y))` and `e^(−a(x+y)) sin(b(x+y))`, with their closed
//! forms (for `g ≡ 1`) and one-dimensional reductions.

use crate::error::{domain, Error, Result};
use crate::exprdsl::FuncSpec;
use crate::genspecial::{beta_f, Params};
use crate::quadcore::{gamma_weighted_with, quadrant_with, EvalResult, IterOrder, Path, QuadConfig, QuadrantWeight};
use crate::scalar::{lit, Real};
use crate::special::ln_gamma;

/// Largest `|b|` accepted by the direct quadrant path.
pub const OSCILLATION_CAP: f64 = 8.0;

/// Damping `a > 0` and frequency `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampParams<T> {
    a: T,
    b: T,
}

impl<T: Real> DampParams<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a > T::zero() && a.is_finite()) {
            return domain(format!("damping a must be > 0, got {a}"));
        }
        if !b.is_finite() {
            return domain("frequency b must be finite");
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// `|a + ib|`.
    pub fn modulus(&self) -> T {
        self.a.hypot(self.b)
    }

    /// `arctan(b/a)`, taken on the principal branch.
    pub fn phase(&self) -> T {
        self.b.atan2(self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

impl Trig {
    fn apply<T: Real>(self, v: T) -> T {
        match self {
            Trig::Cos => v.cos(),
            Trig::Sin => v.sin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DampMode {
    /// Full quadrant quadrature.
    Direct,
    /// `B_f(α, β)` times a closed form or a 1D radial integral.
    Reduced,
}

fn laplace_trig<T: Real>(s: T, d: &DampParams<T>, kind: Trig) -> Result<T> {
    if !(s > T::zero() && s.is_finite()) {
        return domain(format!("s must be > 0, got {s}"));
    }
    let mag = (ln_gamma(s) - s * d.modulus().ln()).exp();
    Ok(mag * kind.apply(s * d.phase()))
}

/// `∫₀^∞ r^(s−1) e^(−ar) cos(br) dr = Γ(s)(a²+b²)^(−s/2) cos(s·arctan(b/a))`.
pub fn laplace_cos_1d<T: Real>(s: T, a: T, b: T) -> Result<T> {
    laplace_trig(s, &DampParams::new(a, b)?, Trig::Cos)
}

/// `∫₀^∞ r^(s−1) e^(−ar) sin(br) dr = Γ(s)(a²+b²)^(−s/2) sin(s·arctan(b/a))`.
pub fn laplace_sin_1d<T: Real>(s: T, a: T, b: T) -> Result<T> {
    laplace_trig(s, &DampParams::new(a, b)?, Trig::Sin)
}

/// Magnitude `|B_f|·Γ(s)/|a+ib|^s` against which damped values are compared;
/// the trigonometric factor itself may vanish.
pub fn damped_scale<T: Real>(beta_f_value: T, s: T, d: &DampParams<T>) -> T {
    beta_f_value.abs() * (ln_gamma(s) - s * d.modulus().ln()).exp()
}

/// `∬ f(y/(x+y)) g(x+y) y^(α−1) x^(β−1) (x+y)^γ e^(−a(x+y)) trig(b(x+y)) dy dx`.
///
/// `g = None` stands for `g ≡ 1`.
pub fn gamma2d_damped<T: Real>(
    f: &FuncSpec<T>,
    g: Option<&FuncSpec<T>>,
    p: &Params<T>,
    d: &DampParams<T>,
    kind: Trig,
    mode: DampMode,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    let g = g.filter(|g| !g.is_one());
    let s = p.total();
    match mode {
        DampMode::Direct => {
            let cap = lit::<T>(OSCILLATION_CAP);
            if d.b.abs() > cap {
                return Err(Error::OscillationCap { b: d.b.to_f64().unwrap_or(f64::NAN), cap: OSCILLATION_CAP });
            }
            let weight = QuadrantWeight { rate: d.a, ..QuadrantWeight::new(p.alpha, p.beta, p.gamma) };
            quadrant_with(weight, IterOrder::AngleOuter, cfg, |un, sn| {
                let gv = match g {
                    Some(g) => g.eval1(sn.x)?,
                    None => T::one(),
                };
                Ok(f.eval1(un.x)? * gv * kind.apply(d.b * sn.x))
            })
        }
        DampMode::Reduced => {
            let bf = beta_f(f, p.alpha, p.beta, cfg)?;
            let radial = match g {
                None => {
                    let v = laplace_trig(s, d, kind)?;
                    let scale = (ln_gamma(s) - s * d.modulus().ln()).exp();
                    EvalResult {
                        err_est: lit::<T>(16.0) * T::epsilon() * scale,
                        ..EvalResult::exact(v, Path::ClosedForm)
                    }
                }
                Some(g) => {
                    // r = σ/a turns e^(−ar) into the standard weight
                    let inv_a = d.a.recip();
                    let r = gamma_weighted_with(s, cfg, |n| {
                        let x = n.x * inv_a;
                        Ok(g.eval1(x)? * kind.apply(d.b * x))
                    })?;
                    r.scaled((-s * d.a.ln()).exp())
                }
            };
            let path = if g.is_none() { Path::ClosedForm } else { Path::Factorized };
            Ok(bf.product(&radial, path))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprdsl::Arity;

    fn u(t: &str) -> FuncSpec<f64> {
        FuncSpec::parse_unary(t).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert!((laplace_cos_1d::<f64>(1.0, 1.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((laplace_cos_1d::<f64>(1.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(laplace_cos_1d::<f64>(2.0, 1.0, 1.0).unwrap().abs() < 1e-15);
        assert_eq!(laplace_sin_1d::<f64>(1.0, 1.0, 0.0).unwrap(), 0.0);
        assert!((laplace_sin_1d::<f64>(1.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((laplace_sin_1d::<f64>(2.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(laplace_cos_1d::<f64>(1.0, 0.0, 1.0).is_err());
        assert!(laplace_cos_1d::<f64>(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn negative_frequency_branch() {
        // ∫ r e^{-r} sin(-r) dr = -1/2
        assert!((laplace_sin_1d::<f64>(2.0, 1.0, -1.0).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn damped_examples() {
        let c = QuadConfig::default();
        let one = FuncSpec::one(Arity::One);
        let p = Params::<f64>::new(1.0, 1.0, 0.0).unwrap();
        for mode in [DampMode::Direct, DampMode::Reduced] {
            let r = gamma2d_damped(&one, None, &p, &DampParams::new(1.0, 0.0).unwrap(), Trig::Cos, mode, &c).unwrap();
            assert!((r.value - 1.0).abs() < 1e-10, "{mode:?}");
            let r = gamma2d_damped(&one, None, &p, &DampParams::new(1.0, 1.0).unwrap(), Trig::Cos, mode, &c).unwrap();
            assert!(r.value.abs() < 1e-10, "{mode:?} {r:?}");
            let r =
                gamma2d_damped(&u("u"), Some(&u("r")), &p, &DampParams::new(2.0, 1.0).unwrap(), Trig::Sin, mode, &c)
                    .unwrap();
            assert!((r.value - 0.088).abs() < 1e-11, "{mode:?} {r:?}");
        }
    }

    #[test]
    fn oscillation_cap() {
        let c = QuadConfig::default();
        let one = FuncSpec::one(Arity::One);
        let p = Params::<f64>::new(1.0, 1.0, 0.0).unwrap();
        let d = DampParams::new(1.0, 9.0).unwrap();
        let r = gamma2d_damped(&one, None, &p, &d, Trig::Cos, DampMode::Direct, &c);
        assert!(matches!(r, Err(Error::OscillationCap { .. })));
        assert!(gamma2d_damped(&one, None, &p, &d, Trig::Cos, DampMode::Reduced, &c).is_ok());
    }
}
