//! Numeric certification of the kernel structure `Ω(y,x) = f(y/(x+y))·g(x+y)`.
//!
//! In the coordinates `u = y/(x+y)`, `s = x+y` a separable kernel satisfies the
//! cross-ratio identity `Ω(u₁,s₁)Ω(u₂,s₂) = Ω(u₁,s₂)Ω(u₂,s₁)` wherever it does
//! not vanish. The detector checks that identity on a probe grid.

use super::{Arity, FuncSpec};
use crate::error::{domain, Result};
use crate::scalar::{from_usize, lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Separable,
    NotSeparable,
    /// Ω vanishes at a probe; the cross-ratio test does not apply.
    NotCertified,
}

#[derive(Debug, Clone)]
pub struct SeparabilityReport<T> {
    pub verdict: Verdict,
    pub separable: bool,
    pub f_extracted: Option<FuncSpec<T>>,
    pub g_extracted: Option<FuncSpec<T>>,
    pub max_residual: T,
    pub probes: usize,
    /// Probe `(u, s)` where Ω vanished, for a not-certified verdict.
    pub zero_probe: Option<(T, T)>,
}

/// Evaluates a two-variable kernel at `(u, s)` coordinates.
pub(crate) fn at_us<T: Real>(omega: &FuncSpec<T>, u: T, s: T) -> Result<T> {
    Ok(omega.eval2(s * u, s * (T::one() - u))?)
}

fn probe_grid<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let nn = from_usize::<T>(n);
    let us = (1..=n)
        .map(|i| {
            let theta = T::PI() * (lit::<T>(2.0) * from_usize::<T>(i) - T::one()) / (lit::<T>(2.0) * nn);
            (T::one() - theta.cos()) / lit(2.0)
        })
        .collect();
    let (lo, hi) = (lit::<T>(0.1), lit::<T>(20.0));
    let ss = (0..n).map(|j| lo * (hi / lo).powf(from_usize::<T>(j) / from_usize::<T>(n - 1))).collect();
    (us, ss)
}

/// Runs the cross-ratio test on a `grid × grid` probe set plus the anchor
/// `(u₀, s₀) = (1/2, 1)` and, on success, extracts `f` and `g`.
pub fn detect_separable<T: Real>(omega: &FuncSpec<T>, tol: T, grid: usize) -> Result<SeparabilityReport<T>> {
    if omega.arity() != Arity::Two {
        return domain("separability detection needs a two-variable function");
    }
    if grid < 2 {
        return domain("probe grid needs at least 2 points per axis");
    }
    if !(tol > T::zero()) {
        return domain("detection tolerance must be positive");
    }
    let (us, ss) = probe_grid::<T>(grid);
    let mut values = vec![vec![T::zero(); grid]; grid];
    for (i, &u) in us.iter().enumerate() {
        for (j, &s) in ss.iter().enumerate() {
            let v = at_us(omega, u, s)?;
            values[i][j] = v;
        }
    }
    let (u0, s0) = (lit::<T>(0.5), T::one());
    let anchor = at_us(omega, u0, s0)?;
    let probes = grid * grid + 1;

    // only exact zeros and underflow break the cross-ratio; tiny values are fine
    let zero_level = T::min_positive_value();
    let mut zero_probe = None;
    if !(anchor.abs() > zero_level) {
        zero_probe = Some((u0, s0));
    }
    for (i, row) in values.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if zero_probe.is_none() && !(v.abs() > zero_level) {
                zero_probe = Some((us[i], ss[j]));
            }
        }
    }
    if zero_probe.is_some() {
        return Ok(SeparabilityReport {
            verdict: Verdict::NotCertified,
            separable: false,
            f_extracted: None,
            g_extracted: None,
            max_residual: T::nan(),
            probes,
            zero_probe,
        });
    }

    let mut max_residual = T::zero();
    for i1 in 0..grid {
        for i2 in (i1 + 1)..grid {
            for j1 in 0..grid {
                for j2 in (j1 + 1)..grid {
                    // anti/diag as a product of quotients, which cannot underflow
                    let q = (values[i1][j2] / values[i1][j1]) * (values[i2][j1] / values[i2][j2]);
                    let r = if q.abs() <= T::one() { (T::one() - q).abs() } else { (T::one() - q.recip()).abs() };
                    max_residual = max_residual.max(r);
                }
            }
        }
    }
    let separable = max_residual <= tol;
    let (f_extracted, g_extracted) = if separable {
        let (f, g) = extract_with_anchor(omega, u0, s0)?;
        (Some(f), Some(g))
    } else {
        (None, None)
    };
    Ok(SeparabilityReport {
        verdict: if separable { Verdict::Separable } else { Verdict::NotSeparable },
        separable,
        f_extracted,
        g_extracted,
        max_residual,
        probes,
        zero_probe: None,
    })
}

/// Extracts `f(u) = Ω(u, s₀)` and `g(s) = Ω(u₀, s)/Ω(u₀, s₀)` as numeric evaluators.
pub fn extract_with_anchor<T: Real>(omega: &FuncSpec<T>, u0: T, s0: T) -> Result<(FuncSpec<T>, FuncSpec<T>)> {
    let anchor = at_us(omega, u0, s0)?;
    if anchor == T::zero() {
        return Err(crate::Error::ZeroProbe { u: u0.to_f64().unwrap_or(f64::NAN), s: s0.to_f64().unwrap_or(f64::NAN) });
    }
    let om_f = omega.clone();
    let f = FuncSpec::from_fn1(&format!("extracted f from {}", omega.label()), move |u| {
        at_us(&om_f, u, s0).unwrap_or_else(|_| T::nan())
    });
    let om_g = omega.clone();
    let g = FuncSpec::from_fn1(&format!("extracted g from {}", omega.label()), move |s| {
        at_us(&om_g, u0, s).map(|v| v / anchor).unwrap_or_else(|_| T::nan())
    });
    Ok((f, g))
}
