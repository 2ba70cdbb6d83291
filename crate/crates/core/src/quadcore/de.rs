//! Double-exponential quadrature engine shared by the (0,1) and (0,∞) rules.
//!
//! Nodes sit on the lattice `t = k·h`, `h = H0 / 2^level`, so every level
//! reuses the sum of the previous one. Weights are carried in log space and
//! exponentiated once per node.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

use super::QuadConfig;

const H0: f64 = 0.5;
const MIN_LEVEL: u32 = 3;
const SCAN_STEP: f64 = 0.125;
const T_SPAN: f64 = 10.0;

/// A quadrature abscissa handed to integrands.
///
/// On (0,1), `xc = 1 − x` is computed without cancellation and `ln_x`,
/// `ln_xc` are exact even where `x` or `xc` would round to 0 or 1. `x` and
/// `xc` are clamped strictly inside the open interval. On (0,∞), `xc` and
/// `ln_xc` mirror `x` and `ln_x`.
#[derive(Debug, Clone, Copy)]
pub struct QuadNode<T> {
    pub x: T,
    pub xc: T,
    pub ln_x: T,
    pub ln_xc: T,
}

/// Integrand value at a node, with the error of any nested integral that produced it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Sample<T> {
    pub value: T,
    pub err: T,
    pub evals: u64,
}

impl<T: Real> Sample<T> {
    pub fn exact(value: T) -> Self {
        Self { value, err: T::zero(), evals: 1 }
    }
}

pub(crate) trait DeMap<T: Real> {
    fn node(&self, t: T) -> QuadNode<T>;
    /// ln of (weight × dx/dt) at `t`.
    fn log_weight(&self, t: T, node: &QuadNode<T>) -> T;
    /// Whether a node whose log weight falls below the envelope cutoff is still evaluated.
    fn keep_below_cutoff(&self, _t: T, _t_peak: T) -> bool {
        false
    }
}

fn softplus<T: Real>(z: T) -> T {
    if z > T::zero() {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// tanh-sinh map onto (0,1) with weight `x^(α−1) (1−x)^(β−1)`.
pub(crate) struct UnitMap<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> DeMap<T> for UnitMap<T> {
    fn node(&self, t: T) -> QuadNode<T> {
        let v = T::FRAC_PI_2() * t.sinh();
        let two_v = v + v;
        let ln_x = -softplus(-two_v);
        let ln_xc = -softplus(two_v);
        let half = lit::<T>(0.5);
        let (x, xc) = if ln_x < ln_xc {
            let x = ln_x.exp();
            (x, T::one() - x)
        } else {
            let xc = ln_xc.exp();
            (T::one() - xc, xc)
        };
        let hi = T::one() - T::epsilon() * half;
        let lo = T::min_positive_value();
        QuadNode { x: x.max(lo).min(hi), xc: xc.max(lo).min(hi), ln_x, ln_xc }
    }

    fn log_weight(&self, t: T, n: &QuadNode<T>) -> T {
        // dx/dt = π cosh(t) x (1 − x)
        self.alpha * n.ln_x + self.beta * n.ln_xc + (T::PI() * t.cosh()).ln()
    }
}

/// exp-sinh map onto (0,∞) with weight `x^(s−1) e^(−x)`.
pub(crate) struct HalfLineMap<T> {
    pub s: T,
}

impl<T: Real> HalfLineMap<T> {
    pub fn t_of_x(x: T) -> T {
        (x.ln() / T::FRAC_PI_2()).asinh()
    }
}

impl<T: Real> DeMap<T> for HalfLineMap<T> {
    fn node(&self, t: T) -> QuadNode<T> {
        let ln_x = T::FRAC_PI_2() * t.sinh();
        let x = ln_x.exp().max(T::min_positive_value()).min(T::max_value());
        QuadNode { x, xc: x, ln_x, ln_xc: ln_x }
    }

    fn log_weight(&self, t: T, n: &QuadNode<T>) -> T {
        // dx/dt = (π/2) cosh(t) x
        self.s * n.ln_x - n.x + (T::FRAC_PI_2() * t.cosh()).ln()
    }

    fn keep_below_cutoff(&self, t: T, t_peak: T) -> bool {
        // the right tail is governed by the truncation point, not the envelope
        t > t_peak
    }
}

/// exp-sinh map onto (0,∞) with weight `y^(α−1) (1+y)^(−α−β)`.
pub(crate) struct RationalMap<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> DeMap<T> for RationalMap<T> {
    fn node(&self, t: T) -> QuadNode<T> {
        let ln_y = T::FRAC_PI_2() * t.sinh();
        let y = ln_y.exp().max(T::min_positive_value()).min(T::max_value());
        QuadNode { x: y, xc: y, ln_x: ln_y, ln_xc: ln_y }
    }

    fn log_weight(&self, t: T, n: &QuadNode<T>) -> T {
        // ln(1 + y) = softplus(ln y); dy/dt = (π/2) cosh(t) y
        self.alpha * n.ln_x - (self.alpha + self.beta) * softplus(n.ln_x) + (T::FRAC_PI_2() * t.cosh()).ln()
    }
}

/// Result of one double-exponential integration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Outcome<T> {
    pub value: T,
    pub err_est: T,
    pub n_evals: u64,
    pub levels: u32,
    /// Sum of |term| × h, a scale for cancellation-aware comparisons.
    pub abs_value: T,
}

/// Log-weight envelope over `[t_min, t_max]`: returns the active window and peak.
pub(crate) struct Window<T> {
    pub lo: T,
    pub hi: T,
    pub peak_lw: T,
    pub t_peak: T,
}

pub(crate) fn scan_window<T: Real, M: DeMap<T>>(map: &M, t_min: T, t_max: T) -> Window<T> {
    let step = lit::<T>(SCAN_STEP);
    let n = ((t_max - t_min) / step).floor().to_usize().unwrap_or(0);
    let lws: Vec<(T, T)> = (0..=n)
        .map(|i| {
            let t = t_min + step * lit(i as f64);
            (t, map.log_weight(t, &map.node(t)))
        })
        .collect();
    let (t_peak, peak_lw) = lws
        .iter()
        .copied()
        .filter(|(_, lw)| lw.is_finite())
        .fold((T::zero(), T::neg_infinity()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
    let floor = peak_lw - T::node_cutoff();
    let mut lo = t_max;
    let mut hi = t_min;
    for &(t, lw) in &lws {
        if lw >= floor {
            lo = lo.min(t);
            hi = hi.max(t);
        }
    }
    Window { lo: (lo - step).max(t_min), hi: (hi + step).min(t_max), peak_lw, t_peak }
}

pub(crate) fn default_span<T: Real>() -> (T, T) {
    (lit(-T_SPAN), lit(T_SPAN))
}

pub(crate) fn integrate<T, M, F>(map: &M, window: &Window<T>, cfg: &QuadConfig<T>, mut f: F) -> Result<Outcome<T>>
where
    T: Real,
    M: DeMap<T>,
    F: FnMut(&QuadNode<T>) -> Result<Sample<T>>,
{
    let floor = window.peak_lw - T::node_cutoff();
    let mut acc = T::zero();
    let mut acc_abs = T::zero();
    let mut acc_err = T::zero();
    let mut n_evals = 0u64;
    let mut prev = T::nan();
    let mut last_err = T::infinity();
    let mut last_tol = T::zero();
    let mut last = None;
    let mut stalled = 0;

    for level in 0..=cfg.max_levels {
        let h = lit::<T>(H0) / lit::<T>(2f64.powi(level as i32));
        let k_lo = (window.lo / h).ceil().to_i64().unwrap_or(0);
        let k_hi = (window.hi / h).floor().to_i64().unwrap_or(0);
        // nodes are accumulated in mirrored pairs (k, -k) so that swapping the
        // two endpoint exponents reproduces the sum bit for bit
        let m_max = k_hi.max(-k_lo).max(0);
        for m in 0..=m_max {
            if level > 0 && m % 2 == 0 {
                continue;
            }
            let mut pair = [T::zero(); 3];
            let ks = [m, -m];
            let ks = if m == 0 { &ks[..1] } else { &ks[..] };
            for &k in ks {
                if k < k_lo || k > k_hi {
                    continue;
                }
                let t = h * lit(k as f64);
                let node = map.node(t);
                let lw = map.log_weight(t, &node);
                if !(lw >= floor) && !map.keep_below_cutoff(t, window.t_peak) {
                    continue;
                }
                let w = lw.exp();
                if w == T::zero() {
                    continue;
                }
                let sample = f(&node)?;
                n_evals += sample.evals;
                let term = sample.value * w;
                pair[0] = pair[0] + term;
                pair[1] = pair[1] + term.abs();
                pair[2] = pair[2] + sample.err * w;
            }
            acc = acc + pair[0];
            acc_abs = acc_abs + pair[1];
            acc_err = acc_err + pair[2];
        }
        let value = h * acc;
        if level >= MIN_LEVEL.min(cfg.max_levels) && level > 0 {
            let diff = (value - prev).abs();
            let rounding = lit::<T>(10.0) * T::epsilon() * h * acc_abs;
            let tol = (cfg.rel_tol * value.abs()).max(cfg.abs_tol);
            let err_est = diff + rounding + h * acc_err;
            if diff <= tol || diff <= rounding {
                return Ok(Outcome { value, err_est, n_evals: n_evals.max(1), levels: level, abs_value: h * acc_abs });
            }
            // a refinement that fails to halve the difference twice in a row
            // means the integrand is resolved down to its own noise
            stalled = if diff > lit::<T>(0.5) * last_err.min(T::max_value()) { stalled + 1 } else { 0 };
            last_err = err_est;
            last_tol = tol;
            last = Some(Outcome { value, err_est, n_evals: n_evals.max(1), levels: level, abs_value: h * acc_abs });
            if cfg.best_effort && stalled >= 2 {
                break;
            }
        }
        if !value.is_finite() {
            break;
        }
        prev = value;
    }
    if let (true, Some(out)) = (cfg.best_effort, last) {
        if out.value.is_finite() && out.err_est.is_finite() {
            return Ok(out);
        }
    }
    Err(Error::NonConvergent {
        err_est: last_err.to_f64().unwrap_or(f64::INFINITY),
        tol: last_tol.to_f64().unwrap_or(0.0),
        levels: cfg.max_levels,
    })
}
