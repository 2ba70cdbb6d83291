//! Classical gamma and beta functions used for closed forms and prefactors.

use crate::scalar::{lit, Real};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Returns NaN for non-positive or NaN arguments.
pub fn ln_gamma<T: Real>(x: T) -> T {
    if !(x > T::zero()) {
        return T::nan();
    }
    if x < lit(0.5) {
        // Gamma(x) = Gamma(x + 1) / x keeps the Lanczos sum in its accurate range.
        return ln_gamma(x + T::one()) - x.ln();
    }
    let xm1 = x - T::one();
    let mut sum = lit::<T>(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum = sum + lit::<T>(c) / (xm1 + lit(i as f64));
    }
    let t = xm1 + lit(LANCZOS_G + 0.5);
    let half_ln_two_pi = lit::<T>(0.918_938_533_204_672_7);
    half_ln_two_pi + (xm1 + lit(0.5)) * t.ln() - t + sum.ln()
}

/// Gamma function for `x > 0`.
pub fn gamma<T: Real>(x: T) -> T {
    if x > T::zero() && x == x.floor() && x <= lit(21.0) {
        // exact factorials for small integers
        let n = x.to_u64().unwrap_or(1);
        let mut acc = T::one();
        for k in 2..n {
            acc = acc * lit(k as f64);
        }
        return acc;
    }
    ln_gamma(x).exp()
}

/// `ln B(a, b) = ln Γ(a) + ln Γ(b) − ln Γ(a + b)`.
pub fn ln_beta<T: Real>(a: T, b: T) -> T {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Classical beta function `B(a, b)` for `a, b > 0`.
pub fn beta<T: Real>(a: T, b: T) -> T {
    ln_beta(a, b).exp()
}

/// Exact binomial coefficient `C(n, k)` in integer arithmetic.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * u64::from(n - i) / u64::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_integer_factorials() {
        assert_eq!(gamma(1.0_f64), 1.0);
        assert_eq!(gamma(5.0_f64), 24.0);
        assert_eq!(gamma(3.0_f64), 2.0);
    }

    #[test]
    fn half_integer() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5_f64) - sqrt_pi).abs() < 1e-14);
        assert!((gamma(1.5_f64) - 0.5 * sqrt_pi).abs() < 1e-14);
    }

    #[test]
    fn beta_values() {
        assert!((beta(2.0_f64, 3.0) - 1.0 / 12.0).abs() < 1e-15);
        assert!((beta(0.5_f64, 0.5) - std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn nonpositive_is_nan() {
        assert!(ln_gamma(0.0_f64).is_nan());
        assert!(ln_gamma(-1.5_f64).is_nan());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(30, 15), 155_117_520);
    }

    #[test]
    fn single_precision() {
        assert!((gamma(4.5_f32) - 11.631_728).abs() / 11.631_728 < 1e-5);
    }
}
