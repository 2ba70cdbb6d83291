mod common;

use common::{unary, CORPUS};
use g2g::genspecial::*;
use g2g::logmoments::*;
use g2g::*;

const POINTS: [(f64, f64, f64); 3] = [(0.5, 2.0, 0.0), (1.0, 1.0, 1.0), (2.0, 0.7, 2.0)];

#[test]
fn beta_identities_hold_on_corpus() {
    let c = QuadConfig64::default();
    for (f, _, fp, _) in CORPUS {
        for (a, b, _) in POINTS {
            let r = residual_beta_recurrence(&unary(f), a, b, &c).unwrap();
            assert!(r.relative() <= 1e-8, "{f} {a} {b} {r:?}");
            let (x, y) = residual_beta_derivative_forms(&unary(f), &unary(fp), a, b, &c).unwrap();
            assert!(x.relative() <= 1e-8 && y.relative() <= 1e-8, "{f} {a} {b} {x:?} {y:?}");
        }
    }
}

#[test]
fn gamma2d_identities_hold_on_corpus() {
    let c = QuadConfig64::default();
    for (f, g, fp, gp) in CORPUS {
        let (f, g, fp, gp) = (unary(f), unary(g), unary(fp), unary(gp));
        for (a, b, gm) in POINTS {
            let p = Params64::new(a, b, gm).unwrap();
            let (s, d) = residual_gamma2d_recurrence(&f, &g, Some(&fp), &p, &c, Mode::Direct).unwrap();
            let d = d.unwrap();
            assert!(s.relative() <= 1e-8 && d.relative() <= 1e-8, "{} {} {p:?} {s:?} {d:?}", f.label(), g.label());
            let r = residual_ratio_property(&f, &g, &p, &c, Mode::Direct).unwrap();
            assert!(r.relative() <= 1e-8, "{} {} {p:?} {r:?}", f.label(), g.label());
            let r = residual_gprime_recurrence(&f, &g, &gp, &p, &c, Mode::Direct).unwrap();
            assert!(r.relative() <= 1e-8, "{} {} {p:?} {r:?}", f.label(), g.label());
            let r = residual_symmetry(&f, &g, &p, &c, Mode::Direct).unwrap();
            assert!(r.relative() <= 1e-8, "{} {} {p:?} {r:?}", f.label(), g.label());
        }
    }
}

#[test]
fn log_moment_forms_agree_on_corpus() {
    let c = QuadConfig64::default();
    for (f, g, _, _) in CORPUS {
        let (f, g) = (unary(f), unary(g));
        let p = Params64::new(1.5, 0.8, 1.0).unwrap();
        for ord in LogMomentOrder::all_up_to(3) {
            let d = gamma2d_logmoment_direct(&f, &g, &p, ord, &c).unwrap();
            let z = gamma2d_logmoment_factorized(&f, &g, &p, ord, &c).unwrap();
            let scale = d.value.abs().max(z.value.abs());
            assert!((d.value - z.value).abs() <= 1e-6 * scale, "{} {} {ord:?} {d:?} {z:?}", f.label(), g.label());
        }
    }
}
