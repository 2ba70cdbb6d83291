//! Series representations of `B_f` and `Γ2D` from the Taylor coefficients
//! `f(x) = Σ_{n≥L} a_n x^n`:
//!
//! `B_f(α, β) = Γ(β) Σ a_n Γ(α+n)/Γ(α+β+n)`.

use crate::error::{domain, Result};
use crate::exprdsl::{Arity, FuncSpec};
use crate::genspecial::{gamma2d, gamma_g, Mode, Params};
use crate::quadcore::{EvalResult, Path, QuadConfig};
use crate::scalar::{from_usize, lit, Real};
use crate::special::ln_gamma;

/// Constant of the heuristic tail bound `|a_N| Γ(β) (α+N)^(−β) · C`.
pub const TAIL_CONSTANT: f64 = 2.0;

/// Coefficients `a_L, a_(L+1), …, a_(L+N−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec<T> {
    start: usize,
    coeffs: Vec<T>,
    complete: bool,
}

impl<T: Real> SeriesSpec<T> {
    /// A truncated infinite series.
    pub fn new(start: usize, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("at least one coefficient is required");
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return domain(format!("coefficient a_{} is not finite", start + i));
        }
        Ok(Self { start, coeffs, complete: false })
    }

    /// A polynomial: the supplied coefficients are all the nonzero ones.
    pub fn polynomial(start: usize, coeffs: Vec<T>) -> Result<Self> {
        Ok(Self { complete: true, ..Self::new(start, coeffs)? })
    }

    /// `a_n = ratio^n` for `n = start .. start+len`.
    pub fn geometric(ratio: T, start: usize, len: usize) -> Result<Self> {
        Self::new(start, (start..start + len).map(|n| ratio.powi(n as i32)).collect())
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Truncation length `N`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The first `n` coefficients.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return domain(format!("truncation length must lie in 1..={}", self.len()));
        }
        Ok(Self { start: self.start, coeffs: self.coeffs[..n].to_vec(), complete: self.complete && n == self.len() })
    }

    /// Rejects nonpositive coefficients.
    pub fn require_positive(&self) -> Result<()> {
        match self.coeffs.iter().position(|c| !(*c > T::zero())) {
            Some(i) => domain(format!("coefficient a_{} is not positive", self.start + i)),
            None => Ok(()),
        }
    }

    /// `(n, a_n)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.start + i, *c))
    }

    /// The function `Σ a_n u^n` as a callable `f`.
    pub fn to_func(&self) -> FuncSpec<T> {
        let spec = self.clone();
        FuncSpec::from_fn1("series", move |u| {
            // Horner from the top coefficient
            let mut acc = T::zero();
            for c in spec.coeffs.iter().rev() {
                acc = acc * u + *c;
            }
            acc * u.powi(spec.start as i32)
        })
    }
}

/// Pairwise summation in a fixed tree order.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    match xs.len() {
        0 => T::zero(),
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn check_range<T: Real>(alpha: T, beta: T) -> Result<()> {
    if !(alpha > T::one()) || !alpha.is_finite() {
        return domain(format!("alpha must be > 1 for the series representation, got {alpha}"));
    }
    if !(beta > T::one()) || !beta.is_finite() {
        return domain(format!("beta must be > 1 for the series representation, got {beta}"));
    }
    Ok(())
}

/// Individual terms `a_n Γ(β)Γ(α+n)/Γ(α+β+n)`, evaluated in log space.
pub fn beta_series_terms<T: Real>(sp: &SeriesSpec<T>, alpha: T, beta: T) -> Result<Vec<T>> {
    check_range(alpha, beta)?;
    let lg_beta = ln_gamma(beta);
    Ok(sp
        .iter()
        .map(|(n, a)| {
            let nn = from_usize::<T>(n);
            a * (lg_beta + ln_gamma(alpha + nn) - ln_gamma(alpha + beta + nn)).exp()
        })
        .collect())
}

fn tail_bound<T: Real>(sp: &SeriesSpec<T>, alpha: T, beta: T) -> T {
    if sp.complete {
        return T::zero();
    }
    let last = *sp.coeffs.last().expect("non-empty");
    let n_end = from_usize::<T>(sp.start + sp.len());
    last.abs() * ln_gamma(beta).exp() * (alpha + n_end).powf(-beta) * lit(TAIL_CONSTANT)
}

fn summed<T: Real>(terms: &[T], tail: T) -> EvalResult<T> {
    let value = pairwise_sum(terms);
    let abs: T = terms.iter().map(|t| t.abs()).sum();
    let depth = from_usize::<T>(terms.len()).log2().ceil() + T::one();
    EvalResult {
        err_est: tail + lit::<T>(4.0) * depth * T::epsilon() * abs,
        n_evals: terms.len() as u64,
        ..EvalResult::exact(value, Path::Series)
    }
}

/// `B_f(α, β)` from the truncated series.
pub fn beta_f_series<T: Real>(sp: &SeriesSpec<T>, alpha: T, beta: T) -> Result<EvalResult<T>> {
    let terms = beta_series_terms(sp, alpha, beta)?;
    Ok(summed(&terms, tail_bound(sp, alpha, beta)))
}

/// `Γ2D = Γ_g(α+β+γ) · Γ(β) Σ a_n Γ(α+n)/Γ(α+β+n)`.
pub fn gamma2d_series<T: Real>(
    sp: &SeriesSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    let b = beta_f_series(sp, p.alpha, p.beta)?;
    let gg = gamma_g(g, p.total(), cfg)?;
    Ok(b.product(&gg, Path::Series))
}

/// `Γ2D = Γ_g(α+β+γ) Σ a_n Γ2D_{1,g}(α+n, β; γ) / Γ_g(α+β+γ+n)`.
pub fn gamma2d_series_viagamma2d<T: Real>(
    sp: &SeriesSpec<T>,
    g: &FuncSpec<T>,
    p: &Params<T>,
    cfg: &QuadConfig<T>,
) -> Result<EvalResult<T>> {
    check_range(p.alpha, p.beta)?;
    let one = FuncSpec::one(Arity::One);
    let s = p.total();
    let mut terms = Vec::with_capacity(sp.len());
    let mut err = T::zero();
    let mut evals = 0u64;
    for (n, a) in sp.iter() {
        let nn = from_usize::<T>(n);
        let num = gamma2d(&one, g, &p.shifted(nn, T::zero(), T::zero()), cfg, Mode::Factorized)?;
        let den = gamma_g(g, s + nn, cfg)?;
        let q = num.value / den.value;
        terms.push(a * q);
        err = err + (a * q).abs() * (num.err_est / num.value.abs() + den.err_est / den.value.abs());
        evals += num.n_evals + den.n_evals;
    }
    let mut sum = summed(&terms, tail_bound(sp, p.alpha, p.beta));
    sum.err_est = sum.err_est + err;
    sum.n_evals += evals;
    let gg = gamma_g(g, s, cfg)?;
    Ok(sum.product(&gg, Path::Series))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(t: &str) -> FuncSpec<f64> {
        FuncSpec::parse_unary(t).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(SeriesSpec::<f64>::new(1, vec![]).is_err());
        assert!(SeriesSpec::new(1, vec![1.0, f64::NAN]).is_err());
        assert!(SeriesSpec::new(0, vec![1.0, -1.0]).unwrap().require_positive().is_err());
        assert!(beta_f_series(&SeriesSpec::new(1, vec![1.0]).unwrap(), 1.0, 2.0).is_err());
        assert!(beta_f_series(&SeriesSpec::new(1, vec![1.0]).unwrap(), 2.0, 0.5).is_err());
    }

    #[test]
    fn beta_series_examples() {
        let sp = SeriesSpec::<f64>::polynomial(1, vec![1.0]).unwrap();
        let r = beta_f_series(&sp, 2.0, 2.0).unwrap();
        assert!((r.value - 1.0 / 12.0).abs() < 1e-15);
        assert!(r.err_est < 1e-15);
        let sp = SeriesSpec::<f64>::polynomial(1, vec![1.0, 1.0]).unwrap();
        assert!((beta_f_series(&sp, 3.0, 2.0).unwrap().value - 1.0 / 12.0).abs() < 1e-15);
        let sp = SeriesSpec::<f64>::geometric(0.5, 1, 60).unwrap();
        let r = beta_f_series(&sp, 2.0, 2.0).unwrap();
        assert!((r.value - 0.060_744_611_093_552_095_7).abs() < 1e-14, "{r:?}");
    }

    #[test]
    fn gamma2d_series_examples() {
        let c = QuadConfig::default();
        let p = Params::new(2.0, 2.0, 0.0).unwrap();
        let sp = SeriesSpec::<f64>::polynomial(1, vec![1.0]).unwrap();
        assert!((gamma2d_series(&sp, &u("1"), &p, &c).unwrap().value - 0.5).abs() < 1e-12);
        assert!((gamma2d_series(&sp, &u("r"), &p, &c).unwrap().value - 2.0).abs() < 1e-11);
        assert!((gamma2d_series_viagamma2d(&sp, &u("1"), &p, &c).unwrap().value - 0.5).abs() < 1e-12);
        let sp2 = SeriesSpec::<f64>::polynomial(1, vec![1.0, 1.0]).unwrap();
        // B(3,2)Γ(4) + B(4,2)Γ(4) = 1/2 + 3/10
        assert!((gamma2d_series_viagamma2d(&sp2, &u("1"), &p, &c).unwrap().value - 0.8).abs() < 1e-12);
    }

    #[test]
    fn geometric_forms_agree() {
        let c = QuadConfig::default();
        let sp = SeriesSpec::<f64>::geometric(0.5, 1, 60).unwrap();
        let f = u("u/(2-u)");
        let p = Params::new(2.0, 2.0, 1.0).unwrap();
        let s = gamma2d_series(&sp, &u("1"), &p, &c).unwrap();
        let q = gamma2d(&f, &u("1"), &p, &c, Mode::Direct).unwrap();
        assert!((s.value - q.value).abs() < 1e-9 * q.value.abs(), "{s:?} {q:?}");
        let p0 = Params::new(2.0, 2.0, 0.0).unwrap();
        let g = u("exp(-r)");
        let a = gamma2d_series(&sp, &g, &p0, &c).unwrap();
        let b = gamma2d_series_viagamma2d(&sp, &g, &p0, &c).unwrap();
        assert!((a.value - b.value).abs() < 1e-9 * a.value.abs());
    }

    #[test]
    fn to_func_matches_closed_form() {
        let sp = SeriesSpec::polynomial(2, vec![1.0, -3.0, 0.5]).unwrap();
        let f = sp.to_func();
        let x = 0.3f64;
        assert!((f.eval1(x).unwrap() - (x * x - 3.0 * x.powi(3) + 0.5 * x.powi(4))).abs() < 1e-15);
    }

    #[test]
    fn pairwise_order_is_fixed() {
        let xs: Vec<f64> = (0..100).map(|i| 1.0 / (i as f64 + 1.0)).collect();
        assert_eq!(pairwise_sum(&xs), pairwise_sum(&xs.clone()));
        assert!((pairwise_sum(&xs) - xs.iter().sum::<f64>()).abs() < 1e-13);
    }
}
