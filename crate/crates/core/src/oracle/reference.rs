//! Frozen reference constants, each paired with the brute-force computation
//! that reproduces it independently of the main engines.

use super::{graded1d, grid2d, hyp2f1_series, series1d};
use crate::error::Result;
use crate::exprdsl::FuncSpec;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// A frozen constant and its oracle.
#[derive(Clone, Copy)]
pub struct Reference {
    pub name: &'static str,
    pub value: f64,
    /// Accuracy expected from the brute-force computation.
    pub oracle_tol: f64,
    pub mint: fn() -> Result<f64>,
}

impl std::fmt::Debug for Reference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Reference").field("name", &self.name).field("value", &self.value).finish()
    }
}

impl Reference {
    /// Recomputes the constant and returns `(oracle value, |oracle − frozen|)`.
    pub fn reproduce(&self) -> Result<(f64, f64)> {
        let v = (self.mint)()?;
        Ok((v, (v - self.value).abs()))
    }
}

fn grid(expr: &str, extent: f64, n: usize) -> Result<f64> {
    grid2d(&FuncSpec::parse_binary(expr)?, extent, extent, n)
}

/// Grid over `(0, x_max) × (0, y_max)`; the expression may already carry a
/// square-root substitution `x = t²` or `y = t²` with its Jacobian.
fn grid_xy(expr: &str, x_max: f64, y_max: f64, n: usize) -> Result<f64> {
    grid2d(&FuncSpec::parse_binary(expr)?, x_max, y_max, n)
}

/// Graded midpoint over `(0, 60)`, enough for the `e^(−r)` tails used here.
fn half_line(f: impl Fn(f64) -> f64) -> Result<f64> {
    graded1d(f, 60.0, 400_000, 3.0)
}

fn unit(f: impl Fn(f64) -> f64) -> Result<f64> {
    graded1d(f, 1.0, 200_000, 1.0)
}

fn pochhammer_partial(a: f64, b: f64, c: f64, z: f64, n: usize) -> Result<f64> {
    let mut terms = Vec::with_capacity(n);
    let mut t = 1.0;
    for k in 0..n {
        terms.push(t);
        let kf = k as f64;
        t *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
    }
    series1d(|k| terms[k], n)
}

/// All reference constants.
pub fn references() -> Vec<Reference> {
    vec![
        Reference {
            name: "gamma_g_exp_omega1",
            value: 0.5,
            oracle_tol: 1e-9,
            mint: || half_line(|x| (-2.0 * x).exp()),
        },
        Reference { name: "gamma2d_u_r_11_0", value: 1.0, oracle_tol: 1e-3, mint: || grid("y*exp(-x-y)", 40.0, 2000) },
        Reference {
            name: "omega_x_plus_y2_11_0",
            value: 3.0,
            oracle_tol: 3e-3,
            mint: || grid("(x+y^2)*exp(-x-y)", 40.0, 2000),
        },
        Reference {
            name: "gamma2d_u2_1_11_0",
            value: 1.0 / 3.0,
            oracle_tol: 1e-3,
            mint: || grid("(y/(x+y))^2*exp(-x-y)", 40.0, 2000),
        },
        Reference {
            name: "logmoment_100",
            value: 1.0 - EULER_GAMMA,
            oracle_tol: 2e-3,
            mint: || grid("log(x+y)*exp(-x-y)", 40.0, 2000),
        },
        Reference {
            name: "logmoment_001",
            value: -EULER_GAMMA,
            oracle_tol: 1e-4,
            // y = t²
            mint: || grid_xy("2*y*log(y^2)*exp(-x-y^2)", 40.0, 7.0, 2000),
        },
        Reference {
            name: "logmoment_011",
            value: 0.333_177_923_807_718_674,
            oracle_tol: 1e-4,
            // x = t², y = v²
            mint: || grid_xy("4*x*y*log(x^2)*log(y^2)*exp(-x^2-y^2)", 7.0, 7.0, 2000),
        },
        Reference {
            name: "digamma_shift_gamma_prime_2",
            value: 1.0 - EULER_GAMMA,
            oracle_tol: 1e-8,
            mint: || half_line(|r| r.ln() * r * (-r).exp()),
        },
        Reference {
            name: "gamma_prime_1",
            value: -EULER_GAMMA,
            oracle_tol: 1e-6,
            mint: || half_line(|r| r.ln() * (-r).exp()),
        },
        Reference {
            name: "gamma_prime_product_2_1p5",
            value: 0.013_672_167_863_576_816_6,
            oracle_tol: 1e-4,
            // x = t²
            mint: || grid_xy("2*x^2*log(x^2)*log(y)*y*exp(-x^2-y)", 7.0, 40.0, 2000),
        },
        Reference {
            name: "laplace_cos_s1_a1_b1",
            value: 0.5,
            oracle_tol: 1e-9,
            mint: || half_line(|r| (-r).exp() * r.cos()),
        },
        Reference {
            name: "laplace_cos_s2_a1_b1",
            value: 0.0,
            oracle_tol: 1e-9,
            mint: || half_line(|r| r * (-r).exp() * r.cos()),
        },
        Reference {
            name: "laplace_sin_s1_a1_b1",
            value: 0.5,
            oracle_tol: 1e-9,
            mint: || half_line(|r| (-r).exp() * r.sin()),
        },
        Reference {
            name: "laplace_sin_s2_a1_b1",
            value: 0.5,
            oracle_tol: 1e-9,
            mint: || half_line(|r| r * (-r).exp() * r.sin()),
        },
        Reference {
            name: "damped_radial_r2_a2_b1_sin",
            value: 0.176,
            oracle_tol: 1e-9,
            mint: || half_line(|r| r * r * (-2.0 * r).exp() * r.sin()),
        },
        Reference {
            name: "damped_u_r_11_0_a2_b1_sin",
            value: 0.088,
            oracle_tol: 1e-3,
            mint: || grid("y*exp(-2*(x+y))*sin(x+y)", 20.0, 2000),
        },
        Reference {
            name: "beta_f_geometric_22",
            value: 0.060_744_611_093_552_095_7,
            oracle_tol: 1e-10,
            mint: || unit(|x| x / (2.0 - x) * x * (1.0 - x)),
        },
        Reference {
            name: "gamma2d_geometric_22_1",
            value: 1.457_870_666_245_250_30,
            oracle_tol: 5e-3,
            mint: || grid("y/(2*x+y)*y*x*(x+y)*exp(-x-y)", 40.0, 2000),
        },
        Reference {
            name: "gamma2d_geometric_exp_22_0",
            value: 0.022_779_229_160_082_035_9,
            oracle_tol: 1e-4,
            mint: || grid("y/(2*x+y)*y*x*exp(-2*(x+y))", 20.0, 2000),
        },
        Reference {
            name: "hyp2f1_1_1_2_half",
            value: 2.0 * std::f64::consts::LN_2,
            oracle_tol: 1e-12,
            mint: || pochhammer_partial(1.0, 1.0, 2.0, 0.5, 60),
        },
        Reference {
            name: "hyp2f1_05_15_25_m1",
            value: 0.799_259_963_030_328_035,
            oracle_tol: 1e-10,
            mint: || hyp2f1_series(0.5, 1.5, 2.5, -1.0, 1e-14),
        },
        Reference {
            name: "hyp2f1_2_1_3_mhalf",
            value: 0.756_279_135_134_684_944,
            oracle_tol: 1e-13,
            mint: || hyp2f1_series(2.0, 1.0, 3.0, -0.5, 1e-17),
        },
        Reference {
            name: "hyp2f1_f_t_1_1_2_half",
            value: 4.0 * std::f64::consts::LN_2 - 2.0,
            oracle_tol: 1e-13,
            // ∫₀¹ t/(1−t/2) dt = Σ_n 2^(−n)/(n+2)
            mint: || series1d(|n| 0.5f64.powi(n as i32) / (n as f64 + 2.0), 80),
        },
    ]
}

/// Looks up a reference constant by name.
pub fn reference(name: &str) -> f64 {
    references()
        .into_iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("unknown reference constant {name}"))
        .value
}
