//! Brute-force reference integrators and summation used to cross-check the
//! main engines. They share no discretization code with [`crate::quadcore`]
//! and trade speed for simplicity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::exprdsl::{Arity, FuncSpec};

mod reference;

pub use reference::{reference, references, Reference, EULER_GAMMA};

fn check_binary(integrand: &FuncSpec<f64>) -> Result<()> {
    if integrand.arity() == Arity::Two || integrand.is_one() {
        Ok(())
    } else {
        domain("integrand must be a function of (x, y)")
    }
}

/// Midpoint rule on `(0, x_max) × (0, y_max)` with `n × n` cells.
///
/// The integrand receives raw `(y, x)` and must include every weight.
pub fn grid2d(integrand: &FuncSpec<f64>, x_max: f64, y_max: f64, n: usize) -> Result<f64> {
    check_binary(integrand)?;
    if n < 100 {
        return domain("grid2d needs n >= 100");
    }
    if !(x_max > 0.0 && y_max > 0.0) {
        return domain("grid extents must be positive");
    }
    let hx = x_max / n as f64;
    let hy = y_max / n as f64;
    let mut total = Neumaier::default();
    for i in 0..n {
        let x = (i as f64 + 0.5) * hx;
        let mut row = Neumaier::default();
        for j in 0..n {
            let y = (j as f64 + 0.5) * hy;
            row.add(integrand.eval2(y, x)?);
        }
        total.add(row.sum());
    }
    Ok(total.sum() * hx * hy)
}

/// [`grid2d`] at `n` together with `|I_n − I_(n/2)|` as an error bound.
pub fn grid2d_with_bound(integrand: &FuncSpec<f64>, x_max: f64, y_max: f64, n: usize) -> Result<(f64, f64)> {
    let fine = grid2d(integrand, x_max, y_max, n)?;
    let coarse = grid2d(integrand, x_max, y_max, (n / 2).max(100))?;
    Ok((fine, (fine - coarse).abs()))
}

/// Uniform Monte-Carlo estimate over the box with its standard error.
pub fn mc2d(integrand: &FuncSpec<f64>, x_max: f64, y_max: f64, n_samples: usize, seed: u64) -> Result<(f64, f64)> {
    check_binary(integrand)?;
    if n_samples < 10_000 {
        return domain("mc2d needs at least 10^4 samples");
    }
    if !(x_max > 0.0 && y_max > 0.0) {
        return domain("box extents must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 0..n_samples {
        let x = rng.gen::<f64>() * x_max;
        let y = rng.gen::<f64>() * y_max;
        let v = integrand.eval2(y, x)?;
        let delta = v - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (v - mean);
    }
    let area = x_max * y_max;
    let var = m2 / (n_samples - 1) as f64;
    Ok((mean * area, area * (var / n_samples as f64).sqrt()))
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of `terms(0) + … + terms(n−1)`.
pub fn series1d(terms: impl Fn(usize) -> f64, n: usize) -> Result<f64> {
    if n == 0 {
        return domain("series1d needs at least one term");
    }
    let mut acc = Neumaier::default();
    for k in 0..n {
        acc.add(terms(k));
    }
    Ok(acc.sum())
}

/// Midpoint rule for `∫₀^hi f(x) dx` after the grading `x = hi·t^p`, which
/// clusters nodes near 0 for integrable endpoint singularities. The cell
/// contributions are summed with [`series1d`].
pub fn graded1d(f: impl Fn(f64) -> f64, hi: f64, n: usize, p: f64) -> Result<f64> {
    let h = 1.0 / n as f64;
    let term = |k: usize| {
        let t = (k as f64 + 0.5) * h;
        let x = hi * t.powf(p);
        f(x) * hi * p * t.powf(p - 1.0)
    };
    Ok(series1d(term, n)? * h)
}

/// Term cap of the hypergeometric series.
pub const HYP_MAX_TERMS: usize = 100_000;

/// Pochhammer series `Σ (a)_k (b)_k / ((c)_k k!) z^k`, stopping once two
/// consecutive terms fall below `term_tol` relative to the sum.
///
/// For `z < 0` the series is summed at `z/(z−1)` after the Pfaff
/// transformation `F(a,b;c;z) = (1−z)^(−a) F(a,c−b;c;z/(z−1))`, which also
/// covers `z = −1` for any parameters. `z = 1` needs `c−a−b > 0`.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64, term_tol: f64) -> Result<f64> {
    if !(z.is_finite() && z <= 1.0) || (z == 1.0 && c - a - b <= 0.0) {
        return domain("series diverges at this z");
    }
    if z < 0.0 {
        return Ok((1.0 - z).powf(-a) * plain_series(a, c - b, c, z / (z - 1.0), term_tol));
    }
    Ok(plain_series(a, b, c, z, term_tol))
}

fn plain_series(a: f64, b: f64, c: f64, z: f64, term_tol: f64) -> f64 {
    let mut term = 1.0;
    let mut acc = Neumaier::default();
    acc.add(term);
    let mut small = 0;
    for k in 0..HYP_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        acc.add(term);
        if term.abs() <= term_tol * acc.sum().abs() {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    acc.sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(t: &str) -> FuncSpec<f64> {
        FuncSpec::parse_binary(t).unwrap()
    }

    #[test]
    fn grid_examples() {
        assert!((grid2d(&b("exp(-x-y)"), 40.0, 40.0, 2000).unwrap() - 1.0).abs() < 1e-4);
        assert!((grid2d(&b("y*exp(-x-y)"), 40.0, 40.0, 2000).unwrap() - 1.0).abs() < 1e-3);
        assert!((grid2d(&b("(x+y)*exp(-x-y)"), 40.0, 40.0, 2000).unwrap() - 2.0).abs() < 1e-3);
        assert!(grid2d(&b("x"), 1.0, 1.0, 10).is_err());
    }

    #[test]
    fn mc_examples() {
        for (t, want) in [("exp(-x-y)", 1.0), ("y*exp(-x-y)", 1.0), ("x*y*exp(-x-y)", 1.0)] {
            let (v, se) = mc2d(&b(t), 40.0, 40.0, 1_000_000, 42).unwrap();
            assert!((v - want).abs() < 3.0 * se, "{t}: {v} ± {se}");
        }
        let a = mc2d(&b("exp(-x-y)"), 20.0, 20.0, 20_000, 7).unwrap();
        let c = mc2d(&b("exp(-x-y)"), 20.0, 20.0, 20_000, 7).unwrap();
        assert_eq!(a.0.to_bits(), c.0.to_bits());
    }

    #[test]
    fn series_examples() {
        assert!((series1d(|n| 0.5f64.powi(n as i32), 60).unwrap() - 2.0).abs() < 1e-15);
        let mut fact = [1.0f64; 25];
        for k in 1..25 {
            fact[k] = fact[k - 1] * k as f64;
        }
        assert!((series1d(|n| 1.0 / fact[n], 25).unwrap() - std::f64::consts::E).abs() < 1e-15);
        let z: f64 = 0.5;
        let poch = series1d(|n| z.powi(n as i32) / (n as f64 + 1.0), 60).unwrap();
        assert!((poch - (-(1.0 - z).ln() / z)).abs() < 1e-12);
        assert!(series1d(|_| 1.0, 0).is_err());
    }

    #[test]
    fn hyp_series_matches_closed_form() {
        let z: f64 = 0.5;
        let v = hyp2f1_series(1.0, 1.0, 2.0, z, 1e-17).unwrap();
        assert!((v - (-(1.0 - z).ln() / z)).abs() < 1e-14);
    }

    #[test]
    fn graded_midpoint() {
        // ∫₀^40 x^(-1/2) e^(-x) dx ≈ √π
        let v = graded1d(|x| x.powf(-0.5) * (-x).exp(), 40.0, 200_000, 4.0).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-8);
    }
}
