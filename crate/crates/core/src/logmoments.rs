//! Log-weighted moments of the two-dimensional generalized gamma function,
//! `∬ f g (log(x+y))^l (log x)^n (log y)^m y^(α−1) x^(β−1) (x+y)^γ e^(−x−y)`,
//! which are the mixed parameter derivatives `∂_γ^l ∂_β^n ∂_α^m Γ2D`.

use crate::error::{domain, Result};
use crate::exprdsl::FuncSpec;
use crate::genspecial::{gamma2d, Mode, Params, Residual};
use crate::quadcore::{
    beta_weighted_with, gamma_weighted_with, quadrant_with, EvalResult, IterOrder, Path, QuadConfig, QuadrantWeight,
};
use crate::scalar::{lit, Real};
use crate::special::binomial;

/// Largest total order `l + m + n` accepted.
pub const MAX_TOTAL_ORDER: u32 = 6;

/// Default relative tolerance when comparing log-weighted identities.
pub const LOG_IDENTITY_TOL: f64 = 1e-6;

/// Powers of `log(x+y)`, `log y` and `log x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogMomentOrder {
    l: u32,
    m: u32,
    n: u32,
}

impl LogMomentOrder {
    pub fn new(l: u32, m: u32, n: u32) -> Result<Self> {
        if l + m + n > MAX_TOTAL_ORDER {
            return domain(format!("l+m+n = {} exceeds the cap {MAX_TOTAL_ORDER}", l + m + n));
        }
        Ok(Self { l, m, n })
    }

    /// Exponent of `log(x+y)`.
    pub fn l(&self) -> u32 {
        self.l
    }

    /// Exponent of `log y`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Exponent of `log x`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn total(&self) -> u32 {
        self.l + self.m + self.n
    }

    /// All orders with `l + m + n <= max_total`.
    pub fn all_up_to(max_total: u32) -> Vec<Self> {
        let cap = max_total.min(MAX_TOTAL_ORDER);
        let mut out = Vec::new();
        for l in 0..=cap {
            for m in 0..=cap - l {
                for n in 0..=cap - l - m {
                    out.push(Self { l, m, n });
                }
            }
        }
        out
    }
}

fn powi<T: Real>(v: T, k: u32) -> T {
    v.powi(k as i32)
}

/// Quadrant quadrature with the logarithms taken pointwise from the node
/// coordinates: `log y = log s + log u`, `log x = log s + log(1−u)`.
pub fn gamma2d_logmoment_direct<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    ord: LogMomentOrder,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    if ord.total() == 0 {
        return gamma2d(f, g, p, cfg, Mode::Direct);
    }
    let weight = QuadrantWeight::new(p.alpha, p.beta, p.gamma);
    quadrant_with(weight, IterOrder::AngleOuter, cfg, |un, sn| {
        let ln_s = sn.ln_x;
        let logs = powi(ln_s, ord.l) * powi(ln_s + un.ln_x, ord.m) * powi(ln_s + un.ln_xc, ord.n);
        Ok(f.eval1(un.x)? * g.eval1(sn.x)? * logs)
    })
}

/// `∫₀¹ f(u) (log u)^p (log(1−u))^q u^(α−1)(1−u)^(β−1) du`.
pub fn beta_f_log<T: Real>(
    f: &FuncSpec<T>,
    alpha: T,
    beta: T,
    p: u32,
    q: u32,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    beta_weighted_with(alpha, beta, cfg, |n| Ok(f.eval1(n.x)? * powi(n.ln_x, p) * powi(n.ln_xc, q)))
}

/// `∫₀^∞ g(r) (log r)^k r^(s−1) e^(−r) dr`.
pub fn gamma_g_log<T: Real>(g: &FuncSpec<T>, s: T, k: u32, cfg: &QuadConfig<T>) -> Result<EvalResult<T>> {
    gamma_weighted_with(s, cfg, |n| Ok(g.eval1(n.x)? * powi(n.ln_x, k)))
}

/// Double binomial sum of products of one-dimensional log-weighted integrals.
pub fn gamma2d_logmoment_factorized<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    ord: LogMomentOrder,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    if ord.total() == 0 {
        return gamma2d(f, g, p, cfg, Mode::Factorized);
    }
    let s = p.total();
    let mut total: Option<EvalResult<T>> = None;
    for i in 0..=ord.n {
        for j in 0..=ord.m {
            let c = (binomial(ord.n, i) * binomial(ord.m, j)) as f64;
            let gp = gamma_g_log(g, s, i + j + ord.l, cfg)?;
            let bp = beta_f_log(f, p.alpha, p.beta, ord.m - j, ord.n - i, cfg)?;
            let term = bp.product(&gp, Path::Factorized).scaled(lit(c));
            total = Some(match total {
                None => term,
                Some(acc) => acc.plus(&term),
            });
        }
    }
    Ok(total.expect("at least one term"))
}

/// Residual of `Γ^(n)(β)Γ^(m)(α) = Σ_{j,i} C(m,j)C(n,i) Γ^(i+j)(α+β) ∂_β^(n−i) ∂_α^(m−j) B(α,β)`.
pub fn classical_derivative_identity<T: Real>(
    m: u32,
    n: u32,
    alpha: T,
    beta: T,
    cfg: &QuadConfig<T>,
) -> Result<Residual<T>> {
    if m > 3 || n > 3 {
        return domain("derivative orders above 3 are not supported");
    }
    let one = FuncSpec::one(crate::exprdsl::Arity::One);
    let ga = gamma_g_log(&one, alpha, m, cfg)?;
    let gb = gamma_g_log(&one, beta, n, cfg)?;
    let mut terms = vec![(T::one(), ga.product(&gb, Path::Direct2d))];
    for j in 0..=m {
        for i in 0..=n {
            let c = (binomial(m, j) * binomial(n, i)) as f64;
            let gs = gamma_g_log(&one, alpha + beta, i + j, cfg)?;
            let b = beta_f_log(&one, alpha, beta, m - j, n - i, cfg)?;
            terms.push((-lit::<T>(c), gs.product(&b, Path::Factorized)));
        }
    }
    Ok(Residual::from_terms(&terms))
}

/// Default step of the finite-difference check.
pub const FD_STEP: f64 = 1e-4;

/// The `l = 1` moment next to a finite-difference derivative of `Γ2D` in `γ`.
///
/// Central differences are used when `γ ≥ step`; closer to the boundary a
/// one-sided second-order formula keeps `γ` inside its domain.
pub fn fd_check_gamma<T: Real>(
    f: &FuncSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    step: T,
    cfg: &QuadConfig<T>,
) -> Result<(EvalResult<T>, T)> {
    let moment = gamma2d_logmoment_factorized(f, g, p, LogMomentOrder::new(1, 0, 0)?, cfg)?;
    let at =
        |d: T| -> Result<T> { Ok(gamma2d(f, g, &p.shifted(T::zero(), T::zero(), d), cfg, Mode::Factorized)?.value) };
    let two = lit::<T>(2.0);
    let fd = if p.gamma >= step {
        (at(step)? - at(-step)?) / (two * step)
    } else {
        (lit::<T>(-3.0) * at(T::zero())? + lit::<T>(4.0) * at(step)? - at(two * step)?) / (two * step)
    };
    Ok((moment, fd))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER: f64 = 0.577_215_664_901_532_9;

    fn u(t: &str) -> FuncSpec<f64> {
        FuncSpec::parse_unary(t).unwrap()
    }

    fn p11() -> Params<f64> {
        Params::new(1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn order_cap() {
        assert!(LogMomentOrder::new(3, 2, 1).is_ok());
        assert!(LogMomentOrder::new(3, 2, 2).is_err());
        assert_eq!(LogMomentOrder::all_up_to(3).len(), 20);
    }

    #[test]
    fn zeroth_order_reduces() {
        let c = QuadConfig::default();
        let o = LogMomentOrder::new(0, 0, 0).unwrap();
        let d = gamma2d_logmoment_direct(&u("1"), &u("1"), &p11(), o, &c).unwrap();
        let f = gamma2d_logmoment_factorized(&u("1"), &u("1"), &p11(), o, &c).unwrap();
        assert!((d.value - 1.0).abs() < 1e-10);
        assert_eq!(f.value, gamma2d(&u("1"), &u("1"), &p11(), &c, Mode::Factorized).unwrap().value);
    }

    #[test]
    fn first_order_examples() {
        let c = QuadConfig::default();
        let one = u("1");
        let o = LogMomentOrder::new(1, 0, 0).unwrap();
        let d = gamma2d_logmoment_direct(&one, &one, &p11(), o, &c).unwrap();
        let f = gamma2d_logmoment_factorized(&one, &one, &p11(), o, &c).unwrap();
        assert!((d.value - (1.0 - EULER)).abs() < 1e-9, "{d:?}");
        assert!((f.value - (1.0 - EULER)).abs() < 1e-10);
        let o = LogMomentOrder::new(0, 0, 1).unwrap();
        let d = gamma2d_logmoment_direct(&one, &one, &p11(), o, &c).unwrap();
        assert!((d.value + EULER).abs() < 1e-9, "{d:?}");
    }

    #[test]
    fn mixed_order_agrees() {
        let c = QuadConfig::default();
        let one = u("1");
        let o = LogMomentOrder::new(0, 1, 1).unwrap();
        let d = gamma2d_logmoment_direct(&one, &one, &p11(), o, &c).unwrap();
        let f = gamma2d_logmoment_factorized(&one, &one, &p11(), o, &c).unwrap();
        assert!((d.value - f.value).abs() < 1e-8 * f.value.abs(), "{d:?} {f:?}");
        assert!((f.value - EULER * EULER).abs() < 1e-9);
    }

    #[test]
    fn classical_identity_residuals() {
        let c = QuadConfig::default();
        assert!(classical_derivative_identity(0, 0, 1.3, 0.7, &c).unwrap().relative() < 1e-12);
        assert!(classical_derivative_identity(1, 0, 1.0f64, 1.0, &c).unwrap().value.abs() < 1e-8);
        assert!(classical_derivative_identity(1, 1, 2.0f64, 1.5, &c).unwrap().value.abs() < 1e-7);
        assert!(classical_derivative_identity(4, 0, 1.0, 1.0, &c).is_err());
    }

    #[test]
    fn finite_difference_in_gamma() {
        let c = QuadConfig::default();
        for gamma in [0.0, 1.0] {
            let p = Params::new(1.5, 2.0, gamma).unwrap();
            let (m, fd) = fd_check_gamma(&u("u"), &u("exp(-r/2)"), &p, FD_STEP, &c).unwrap();
            assert!((m.value - fd).abs() < 1e-5 * m.value.abs(), "{gamma} {m:?} {fd}");
        }
    }
}
