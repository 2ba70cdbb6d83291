mod common;

use common::{binary, rel, unary};
use g2g::damped::{gamma2d_damped, laplace_cos_1d, laplace_sin_1d, DampMode, Trig};
use g2g::exprdsl::{detect_separable, Verdict};
use g2g::genspecial::*;
use g2g::hyperg::{hyp2f1, hyp2f1_f, hyp2f1_gamma2d, HypRoute};
use g2g::logmoments::*;
use g2g::oracle::reference;
use g2g::seriesrep::{beta_f_series, gamma2d_series, gamma2d_series_viagamma2d};
use g2g::*;

fn cfg() -> QuadConfig64 {
    QuadConfig64::default()
}

#[test]
fn generalized_gamma_matches_reference() {
    let r = gamma_g(&unary("exp(-r)"), 1.0, &cfg()).unwrap();
    assert!(rel(r.value, reference("gamma_g_exp_omega1")) < 1e-12);
}

#[test]
fn quadrant_values_match_references() {
    let c = cfg();
    let p = Params64::new(1.0, 1.0, 0.0).unwrap();
    for mode in [Mode::Direct, Mode::Factorized] {
        let r = gamma2d(&unary("u"), &unary("r"), &p, &c, mode).unwrap();
        assert!(rel(r.value, reference("gamma2d_u_r_11_0")) < 1e-10);
        let r = gamma2d(&unary("u^2"), &unary("1"), &p, &c, mode).unwrap();
        assert!(rel(r.value, reference("gamma2d_u2_1_11_0")) < 1e-10);
    }
    let r = gamma2d_omega(&binary("x + y^2"), &p, &c, true).unwrap();
    assert!(rel(r.value, reference("omega_x_plus_y2_11_0")) < 1e-10);
    assert_eq!(r.path, Path::Direct2d);
}

#[test]
fn geometric_kernel_matches_references() {
    let c = cfg();
    let f = unary("u/(2-u)");
    let b = beta_f(&f, 2.0, 2.0, &c).unwrap();
    assert!(rel(b.value, reference("beta_f_geometric_22")) < 1e-12);
    let p = Params64::new(2.0, 2.0, 1.0).unwrap();
    let d = gamma2d(&f, &unary("1"), &p, &c, Mode::Direct).unwrap();
    assert!(rel(d.value, reference("gamma2d_geometric_22_1")) < 1e-10);
    let p0 = Params64::new(2.0, 2.0, 0.0).unwrap();
    let d = gamma2d(&f, &unary("exp(-r)"), &p0, &c, Mode::Direct).unwrap();
    assert!(rel(d.value, reference("gamma2d_geometric_exp_22_0")) < 1e-10);
}

#[test]
fn log_moments_match_references() {
    let c = cfg();
    let one = unary("1");
    let p = Params64::new(1.0, 1.0, 0.0).unwrap();
    for (ord, name) in [((1, 0, 0), "logmoment_100"), ((0, 0, 1), "logmoment_001"), ((0, 1, 1), "logmoment_011")] {
        let o = LogMomentOrder::new(ord.0, ord.1, ord.2).unwrap();
        let d = gamma2d_logmoment_direct(&one, &one, &p, o, &c).unwrap();
        let f = gamma2d_logmoment_factorized(&one, &one, &p, o, &c).unwrap();
        assert!(rel(d.value, reference(name)) < 1e-8, "{name} direct {d:?}");
        assert!(rel(f.value, reference(name)) < 1e-10, "{name} factorized {f:?}");
    }
    let g1 = gamma_g_log(&one, 2.0, 1, &c).unwrap();
    assert!(rel(g1.value, reference("digamma_shift_gamma_prime_2")) < 1e-12);
    let g0 = gamma_g_log(&one, 1.0, 1, &c).unwrap();
    assert!(rel(g0.value, reference("gamma_prime_1")) < 1e-12);
    let prod = gamma_g_log(&one, 2.0, 1, &c).unwrap().value * gamma_g_log(&one, 1.5, 1, &c).unwrap().value;
    assert!(rel(prod, reference("gamma_prime_product_2_1p5")) < 1e-10);
}

#[test]
fn log_gamma_derivative_against_finite_differences() {
    let c = cfg();
    let one = unary("1");
    let h = 1e-5;
    let fd = (g2g::special::ln_gamma(1.0 + h) - g2g::special::ln_gamma(1.0 - h)) / (2.0 * h);
    let q = gamma_g_log(&one, 1.0, 1, &c).unwrap().value;
    assert!((q - fd).abs() < 1e-8, "{q} {fd}");
}

#[test]
fn classical_derivative_identity_examples() {
    let c = cfg();
    assert!(classical_derivative_identity(1, 0, 1.0, 1.0, &c).unwrap().value.abs() < 1e-8);
    assert!(classical_derivative_identity(1, 1, 2.0, 1.5, &c).unwrap().value.abs() < 1e-7);
}

#[test]
fn damped_values_match_references() {
    assert!((laplace_cos_1d(1.0, 1.0, 1.0).unwrap() - reference("laplace_cos_s1_a1_b1")).abs() < 1e-15);
    assert!((laplace_cos_1d(2.0, 1.0, 1.0).unwrap() - reference("laplace_cos_s2_a1_b1")).abs() < 1e-15);
    assert!((laplace_sin_1d(1.0, 1.0, 1.0).unwrap() - reference("laplace_sin_s1_a1_b1")).abs() < 1e-15);
    assert!((laplace_sin_1d(2.0, 1.0, 1.0).unwrap() - reference("laplace_sin_s2_a1_b1")).abs() < 1e-15);
    let c = cfg();
    let p = Params64::new(1.0, 1.0, 0.0).unwrap();
    let d = DampParams64::new(2.0, 1.0).unwrap();
    let want = reference("damped_u_r_11_0_a2_b1_sin");
    assert!((want - 0.5 * reference("damped_radial_r2_a2_b1_sin")).abs() < 1e-15);
    for mode in [DampMode::Direct, DampMode::Reduced] {
        let r = gamma2d_damped(&unary("u"), Some(&unary("r")), &p, &d, Trig::Sin, mode, &c).unwrap();
        assert!(rel(r.value, want) < 1e-10, "{mode:?} {r:?}");
    }
}

#[test]
fn series_values_match_references() {
    let c = cfg();
    let sp = SeriesSpec64::geometric(0.5, 1, 60).unwrap();
    let b = beta_f_series(&sp, 2.0, 2.0).unwrap();
    assert!(rel(b.value, reference("beta_f_geometric_22")) < 1e-10);
    let p = Params64::new(2.0, 2.0, 1.0).unwrap();
    let s = gamma2d_series(&sp, &unary("1"), &p, &c).unwrap();
    assert!(rel(s.value, reference("gamma2d_geometric_22_1")) < 1e-9);
    let p0 = Params64::new(2.0, 2.0, 0.0).unwrap();
    let g = unary("exp(-r)");
    let a = gamma2d_series(&sp, &g, &p0, &c).unwrap();
    let v = gamma2d_series_viagamma2d(&sp, &g, &p0, &c).unwrap();
    assert!(rel(a.value, reference("gamma2d_geometric_exp_22_0")) < 1e-9);
    assert!(rel(v.value, reference("gamma2d_geometric_exp_22_0")) < 1e-9);
    let one_term = SeriesSpec64::polynomial(1, vec![1.0]).unwrap();
    assert!(rel(gamma2d_series(&one_term, &unary("r"), &p0, &c).unwrap().value, 2.0) < 1e-12);
}

#[test]
fn hypergeometric_values_match_references() {
    let c = cfg();
    let two_ln2 = reference("hyp2f1_1_1_2_half");
    assert!(rel(hyp2f1(1.0, 1.0, 2.0, 0.5, &c).unwrap().value, two_ln2) < 1e-10);
    assert!(rel(hyp2f1_gamma2d(1.0, 1.0, 2.0, 0.5, &c).unwrap().value, two_ln2) < 1e-9);
    assert!(rel(hyp2f1(0.5, 1.5, 2.5, -1.0, &c).unwrap().value, reference("hyp2f1_05_15_25_m1")) < 1e-10);
    let e = hyp2f1(2.0, 1.0, 3.0, -0.5, &c).unwrap().value;
    let q = hyp2f1_gamma2d(2.0, 1.0, 3.0, -0.5, &c).unwrap().value;
    assert!(rel(e, reference("hyp2f1_2_1_3_mhalf")) < 1e-10);
    assert!(rel(q, e) < 1e-8);
    let ff = hyp2f1_f(&unary("t"), 1.0, 1.0, 2.0, 0.5, &unary("1"), 0.0, HypRoute::Euler, &c).unwrap();
    assert!(rel(ff.value, reference("hyp2f1_f_t_1_1_2_half")) < 1e-10);
    let wg = hyp2f1_f(&unary("1"), 1.0, 1.0, 2.0, 0.5, &unary("s"), 1.0, HypRoute::WithG, &c).unwrap();
    assert!(rel(wg.value, two_ln2) < 1e-9);
}

#[test]
fn separability_examples() {
    let sep = detect_separable(&binary("(y/(x+y))^2*(x+y)*exp(x+y)"), 1e-10, 8).unwrap();
    assert_eq!(sep.verdict, Verdict::Separable);
    let xy = detect_separable(&binary("x*y"), 1e-10, 8).unwrap();
    assert!(xy.separable);
    let f = xy.f_extracted.unwrap();
    let g = xy.g_extracted.unwrap();
    for (u, s) in [(0.2, 0.5), (0.7, 3.0)] {
        let want = s * s * u * (1.0 - u);
        assert!(rel(f.eval1(u).unwrap() * g.eval1(s).unwrap(), want) < 1e-12);
    }
    let non = detect_separable(&binary("x + y^2"), 1e-10, 8).unwrap();
    assert_eq!(non.verdict, Verdict::NotSeparable);
    assert!(non.max_residual > 1e-2);
}

#[test]
fn single_precision_paths() {
    let c = QuadConfig32::default().with_rel_tol(1e-5);
    let f = FuncSpec32::parse_unary("u^2").unwrap();
    let g = FuncSpec32::parse_unary("exp(-r/2)").unwrap();
    let p = Params::<f32>::new(1.5, 2.0, 1.0).unwrap();
    let d = gamma2d(&f, &g, &p, &c, Mode::Direct).unwrap();
    let fz = gamma2d(&f, &g, &p, &c, Mode::Factorized).unwrap();
    let f64v =
        gamma2d(&unary("u^2"), &unary("exp(-r/2)"), &Params64::new(1.5, 2.0, 1.0).unwrap(), &cfg(), Mode::Factorized)
            .unwrap()
            .value;
    assert!(rel(d.value as f64, f64v) < 1e-4, "{d:?} {f64v}");
    assert!(rel(fz.value as f64, f64v) < 1e-5);
}
