//! The `verify` check suite.
//!
//! Every check yields one [`Check`] row. Checks are grouped; groups run in
//! parallel but rows are returned in a fixed order.

use g2g::damped::{damped_scale, gamma2d_damped, laplace_cos_1d, laplace_sin_1d, DampMode, DampParams, Trig};
use g2g::exprdsl::{detect_separable, Verdict};
use g2g::genspecial::*;
use g2g::hyperg::{hyp2f1, hyp2f1_f, hyp2f1_gamma2d, HypRoute};
use g2g::logmoments::{
    classical_derivative_identity, fd_check_gamma, gamma2d_logmoment_direct, gamma2d_logmoment_factorized,
    LogMomentOrder, FD_STEP,
};
use g2g::oracle::{grid2d_with_bound, hyp2f1_series, mc2d, references};
use g2g::seriesrep::{beta_f_series, gamma2d_series, gamma2d_series_viagamma2d};
use g2g::special::gamma as gamma_fn;
use g2g::{EvalResult64, FuncSpec64, Params64, QuadConfig64, SeriesSpec64};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::defaults::{CorpusEntry, Defaults};
use crate::report::Report;

pub const GROUPS: &[&str] = &[
    "classical",
    "factorization",
    "paths",
    "beta-identities",
    "gamma2d-identities",
    "radial-recurrences",
    "symmetry",
    "log-moments",
    "classical-derivatives",
    "damped",
    "series",
    "hypergeometric",
    "separability",
    "oracle",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedInadmissible,
    Error,
}

/// Whether the residual must stay below or reach the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub group: &'static str,
    #[serde(rename = "identity")]
    pub tag: &'static str,
    pub subject: String,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub bound: Bound,
    pub status: Status,
    pub note: Option<String>,
}

impl Check {
    fn measured(
        group: &'static str,
        tag: &'static str,
        subject: impl Into<String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        let ok = residual <= tolerance;
        Self {
            group,
            tag,
            subject: subject.into(),
            residual: Some(residual),
            tolerance,
            bound: Bound::Upper,
            status: if ok { Status::Pass } else { Status::Fail },
            note: None,
        }
    }

    fn from_result(
        group: &'static str,
        tag: &'static str,
        subject: impl Into<String>,
        residual: g2g::Result<f64>,
        tolerance: f64,
    ) -> Self {
        match residual {
            Ok(r) => Self::measured(group, tag, subject, r, tolerance),
            Err(e) => Self {
                group,
                tag,
                subject: subject.into(),
                residual: None,
                tolerance,
                bound: Bound::Upper,
                status: Status::Error,
                note: Some(e.to_string()),
            },
        }
    }

    fn skipped(group: &'static str, tag: &'static str, subject: impl Into<String>, tolerance: f64, why: &str) -> Self {
        Self {
            group,
            tag,
            subject: subject.into(),
            residual: None,
            tolerance,
            bound: Bound::Upper,
            status: Status::SkippedInadmissible,
            note: Some(why.into()),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::SkippedInadmissible)
    }
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        (got - want).abs() / want.abs()
    }
}

/// `|a − b|` in units of the combined error allowance of the two results.
fn error_ratio(a: &EvalResult64, b: &EvalResult64) -> f64 {
    let scale = a.value.abs().max(b.value.abs());
    let allowance = 100.0 * (a.err_est + b.err_est) + 100.0 * f64::EPSILON * scale;
    if allowance == 0.0 {
        if a.value == b.value {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (a.value - b.value).abs() / allowance
    }
}

fn finite_at(h: &FuncSpec64, xs: &[f64]) -> bool {
    xs.iter().all(|&x| h.eval1(x).is_ok_and(f64::is_finite))
}

/// `f` and `f′` take finite values at both ends of the unit interval.
pub fn admissible_f(f: &FuncSpec64, fp: &FuncSpec64) -> bool {
    finite_at(f, &[0.0, 1.0]) && finite_at(fp, &[0.0, 1.0])
}

/// `g` is finite at the origin and `g′` is finite away from it.
pub fn admissible_g(g: &FuncSpec64, gp: &FuncSpec64) -> bool {
    finite_at(g, &[0.0, 1.0, 50.0]) && finite_at(gp, &[1e-8, 1.0, 50.0])
}

struct Parsed {
    name: String,
    f: FuncSpec64,
    g: FuncSpec64,
    fp: FuncSpec64,
    gp: FuncSpec64,
}

fn parse_entry(e: &CorpusEntry) -> g2g::Result<Parsed> {
    Ok(Parsed {
        name: e.name.clone(),
        f: FuncSpec64::parse_unary(&e.f)?,
        g: FuncSpec64::parse_unary(&e.g)?,
        fp: FuncSpec64::parse_unary(&e.fprime)?,
        gp: FuncSpec64::parse_unary(&e.gprime)?,
    })
}

/// Inputs shared by every check.
pub struct Suite<'a> {
    pub defaults: &'a Defaults,
    pub cfg: QuadConfig64,
    pub seed: u64,
}

type Task<'a> = (&'static str, Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>);

impl<'a> Suite<'a> {
    pub fn new(defaults: &'a Defaults, cfg: QuadConfig64, seed: u64) -> Self {
        Self { defaults, cfg, seed }
    }

    fn point(&self) -> g2g::Result<Params64> {
        let v = &self.defaults.verify;
        Params64::new(v.alpha, v.beta, v.gamma)
    }

    /// Runs the selected groups (all when `only` is empty).
    pub fn run(&self, only: &[String]) -> Vec<Check> {
        let tasks = self.tasks();
        let selected: Vec<&Task> =
            tasks.iter().filter(|(g, _)| only.is_empty() || only.iter().any(|o| o == g)).collect();
        let rows: Vec<Vec<Check>> = selected.par_iter().map(|(_, t)| t()).collect();
        rows.into_iter().flatten().collect()
    }

    /// Runs one group.
    pub fn group(&self, name: &str) -> Vec<Check> {
        self.run(&[name.to_string()])
    }

    fn tasks(&self) -> Vec<Task<'_>> {
        let mut tasks: Vec<Task<'_>> = vec![("classical", Box::new(|| self.classical()))];
        type PerEntry<'s> = fn(&Suite<'s>, &Parsed) -> Vec<Check>;
        let per_entry: [(&'static str, &'static str, PerEntry<'a>); 9] = [
            ("factorization", "factorization-identity", Suite::factorization),
            ("paths", "path-equivalence", Suite::paths),
            ("beta-identities", "beta-recurrence", Suite::beta_identities),
            ("gamma2d-identities", "gamma2d-recurrence", Suite::gamma2d_identities),
            ("radial-recurrences", "radial-recurrence", Suite::radial),
            ("symmetry", "reflection-symmetry", Suite::symmetry),
            ("log-moments", "log-moment-binomial-sum", Suite::log_moments),
            ("damped", "damped-trig-reduction", Suite::damped),
            ("oracle", "oracle-agreement", Suite::oracle_cross),
        ];
        for (group, tag, check) in per_entry {
            for e in &self.defaults.corpus {
                tasks.push((
                    group,
                    Box::new(move || match parse_entry(e) {
                        Ok(p) => check(self, &p),
                        Err(err) => vec![Check::from_result(group, tag, e.name.clone(), Err(err), 0.0)],
                    }),
                ));
            }
        }
        tasks.push(("classical-derivatives", Box::new(|| self.classical_derivatives())));
        tasks.push(("damped", Box::new(|| self.damped_invariants())));
        tasks.push(("series", Box::new(|| self.series())));
        tasks.push(("hypergeometric", Box::new(|| self.hyp_closed_form())));
        tasks.push(("hypergeometric", Box::new(|| self.hyp_paths())));
        tasks.push(("hypergeometric", Box::new(|| self.hyp_generalized())));
        tasks.push(("separability", Box::new(|| self.separability())));
        tasks.push(("oracle", Box::new(|| self.oracle_references())));
        // order rows by group, then by insertion
        tasks.sort_by_key(|(g, _)| GROUPS.iter().position(|x| x == g).unwrap_or(usize::MAX));
        tasks
    }

    fn classical(&self) -> Vec<Check> {
        let tol = self.defaults.verify.classical_tol;
        let one = FuncSpec64::parse_unary("1").expect("constant parses");
        let mut out = Vec::new();
        for gamma in [0.0, 1.0, 2.0] {
            let r = Params64::new(1.0, 1.0, gamma)
                .and_then(|p| gamma2d(&one, &one, &p, &self.cfg, Mode::Direct))
                .map(|r| rel(r.value, gamma_fn(2.0 + gamma)));
            out.push(Check::from_result(
                "classical",
                "classical-reduction",
                format!("unit weights, gamma={gamma}"),
                r,
                tol,
            ));
            let r = Params64::new(0.5, 0.5, gamma)
                .and_then(|p| gamma2d(&one, &one, &p, &self.cfg, Mode::Direct))
                .map(|r| rel(r.value, std::f64::consts::PI * gamma_fn(1.0 + gamma)));
            out.push(Check::from_result(
                "classical",
                "classical-reduction",
                format!("half weights, gamma={gamma}"),
                r,
                tol,
            ));
        }
        out
    }

    fn factorization(&self, e: &Parsed) -> Vec<Check> {
        let tol = self.defaults.verify.factorization_tol;
        let r = (|| {
            let mut worst = 0.0f64;
            for (a, b, c) in self.defaults.grid.cells() {
                let p = Params64::new(a, b, c)?;
                let d = gamma2d(&e.f, &e.g, &p, &self.cfg, Mode::Direct)?;
                let z = gamma2d(&e.f, &e.g, &p, &self.cfg, Mode::Factorized)?;
                worst = worst.max(rel(d.value, z.value));
            }
            Ok(worst)
        })();
        vec![Check::from_result("factorization", "factorization-identity", &e.name, r, tol)
            .with_note(format!("max over {} grid cells", self.defaults.grid.cells().len()))]
    }

    fn paths(&self, e: &Parsed) -> Vec<Check> {
        let r = (|| {
            let p = self.point()?;
            let z = gamma2d(&e.f, &e.g, &p, &self.cfg, Mode::Factorized)?;
            let d = gamma2d(&e.f, &e.g, &p, &self.cfg, Mode::Direct)?;
            let polar = gamma2d_polar(&e.f, &e.g, &p, &self.cfg)?;
            let hl = beta_f_halfline(&e.f, p.alpha, p.beta, &self.cfg)?;
            let rad = gamma_g(&e.g, p.total(), &self.cfg)?;
            let half = hl.product(&rad, g2g::Path::Factorized);
            Ok([d, polar, half].iter().map(|x| error_ratio(x, &z)).fold(0.0, f64::max))
        })();
        vec![Check::from_result("paths", "path-equivalence", &e.name, r, 1.0)
            .with_note("largest discrepancy in units of the combined error allowance")]
    }

    fn beta_identities(&self, e: &Parsed) -> Vec<Check> {
        let tol = self.defaults.verify.identity_tol;
        let v = &self.defaults.verify;
        let rec = residual_beta_recurrence(&e.f, v.alpha, v.beta, &self.cfg).map(|r| r.relative());
        let mut out = vec![Check::from_result("beta-identities", "beta-recurrence", &e.name, rec, tol)];
        if admissible_f(&e.f, &e.fp) {
            let r = residual_beta_derivative_forms(&e.f, &e.fp, v.alpha, v.beta, &self.cfg)
                .map(|(a, b)| a.relative().max(b.relative()));
            out.push(Check::from_result("beta-identities", "beta-derivative-forms", &e.name, r, tol));
        } else {
            out.push(Check::skipped(
                "beta-identities",
                "beta-derivative-forms",
                &e.name,
                tol,
                "f or f' not finite at 0 or 1",
            ));
        }
        out
    }

    fn gamma2d_identities(&self, e: &Parsed) -> Vec<Check> {
        let tol = self.defaults.verify.identity_tol;
        let fp = admissible_f(&e.f, &e.fp).then_some(&e.fp);
        let r = self.point().and_then(|p| residual_gamma2d_recurrence(&e.f, &e.g, fp, &p, &self.cfg, Mode::Direct));
        match r {
            Err(err) => vec![Check::from_result("gamma2d-identities", "gamma2d-recurrence", &e.name, Err(err), tol)],
            Ok((sum, deriv)) => {
                let mut out =
                    vec![Check::measured("gamma2d-identities", "gamma2d-sum-rule", &e.name, sum.relative(), tol)];
                out.push(match deriv {
                    Some(d) => {
                        Check::measured("gamma2d-identities", "gamma2d-derivative-form", &e.name, d.relative(), tol)
                    }
                    None => Check::skipped(
                        "gamma2d-identities",
                        "gamma2d-derivative-form",
                        &e.name,
                        tol,
                        "f or f' not finite at 0 or 1",
                    ),
                });
                out
            }
        }
    }

    fn radial(&self, e: &Parsed) -> Vec<Check> {
        let tol = self.defaults.verify.identity_tol;
        let ratio = self
            .point()
            .and_then(|p| residual_ratio_property(&e.f, &e.g, &p, &self.cfg, Mode::Direct))
            .map(|r| r.relative());
        let mut out = vec![Check::from_result("radial-recurrences", "ratio-property", &e.name, ratio, tol)];
        if admissible_g(&e.g, &e.gp) {
            let r = self
                .point()
                .and_then(|p| residual_gprime_recurrence(&e.f, &e.g, &e.gp, &p, &self.cfg, Mode::Direct))
                .map(|r| r.relative());
            out.push(Check::from_result("radial-recurrences", "radial-derivative-recurrence", &e.name, r, tol));
        } else {
            out.push(Check::skipped(
                "radial-recurrences",
                "radial-derivative-recurrence",
                &e.name,
                tol,
                "g not finite at 0 or g' not finite on (0, inf)",
            ));
        }
        out
    }

    fn symmetry(&self, e: &Parsed) -> Vec<Check> {
        let tol = self.defaults.verify.identity_tol;
        let r =
            self.point().and_then(|p| residual_symmetry(&e.f, &e.g, &p, &self.cfg, Mode::Direct)).map(|r| r.relative());
        vec![Check::from_result("symmetry", "reflection-symmetry", &e.name, r, tol)]
    }

    fn log_moments(&self, e: &Parsed) -> Vec<Check> {
        let v = &self.defaults.verify;
        let agree = (|| {
            let p = self.point()?;
            let mut worst = 0.0f64;
            for ord in LogMomentOrder::all_up_to(3) {
                let d = gamma2d_logmoment_direct(&e.f, &e.g, &p, ord, &self.cfg)?;
                let z = gamma2d_logmoment_factorized(&e.f, &e.g, &p, ord, &self.cfg)?;
                let scale = d.value.abs().max(z.value.abs());
                let r = if scale == 0.0 { 0.0 } else { (d.value - z.value).abs() / scale };
                worst = worst.max(r);
            }
            Ok(worst)
        })();
        let fd = (|| {
            let p = self.point()?;
            let (m, fd) = fd_check_gamma(&e.f, &e.g, &p, FD_STEP, &self.cfg)?;
            let base = gamma2d(&e.f, &e.g, &p, &self.cfg, Mode::Factorized)?;
            Ok((m.value - fd).abs() / m.value.abs().max(base.value.abs()))
        })();
        vec![
            Check::from_result("log-moments", "log-moment-binomial-sum", &e.name, agree, v.log_tol)
                .with_note("max over l+m+n <= 3"),
            Check::from_result("log-moments", "log-moment-finite-difference", &e.name, fd, v.fd_tol),
        ]
    }

    fn classical_derivatives(&self) -> Vec<Check> {
        let tol = self.defaults.verify.derivative_tol;
        [(1.0, 1.0), (2.0, 1.5), (0.8, 2.2)]
            .into_iter()
            .map(|(a, b)| {
                let r = (|| {
                    let mut worst = 0.0f64;
                    for m in 0..=2 {
                        for n in 0..=2 {
                            worst = worst.max(classical_derivative_identity(m, n, a, b, &self.cfg)?.relative());
                        }
                    }
                    Ok(worst)
                })();
                Check::from_result(
                    "classical-derivatives",
                    "classical-derivative-product",
                    format!("alpha={a}, beta={b}"),
                    r,
                    tol,
                )
                .with_note("max over m, n <= 2")
            })
            .collect()
    }

    fn damped(&self, e: &Parsed) -> Vec<Check> {
        let tol = self.defaults.verify.damped_tol;
        let r = (|| {
            let p = self.point()?;
            let bf = beta_f(&e.f, p.alpha, p.beta, &self.cfg)?.value;
            let g = (!e.g.is_one()).then_some(&e.g);
            let mut worst = 0.0f64;
            for a in DAMP_A {
                for b in DAMP_B {
                    let d = DampParams::new(a, b)?;
                    for kind in [Trig::Cos, Trig::Sin] {
                        let x = gamma2d_damped(&e.f, g, &p, &d, kind, DampMode::Direct, &self.cfg)?;
                        let y = gamma2d_damped(&e.f, g, &p, &d, kind, DampMode::Reduced, &self.cfg)?;
                        let scale = damped_scale(bf, p.total(), &d);
                        if scale > 0.0 {
                            worst = worst.max((x.value - y.value).abs() / scale);
                        }
                    }
                }
            }
            Ok(worst)
        })();
        vec![Check::from_result("damped", "damped-trig-reduction", &e.name, r, tol)
            .with_note("max over the (a, b, cos/sin) grid, relative to the damped scale")]
    }

    fn damped_invariants(&self) -> Vec<Check> {
        let tol = self.defaults.verify.invariant_tol;
        let r = (|| {
            let mut worst = 0.0f64;
            for s in [0.5, 1.5, 2.5, 4.0] {
                for a in DAMP_A {
                    for b in DAMP_B {
                        let c = laplace_cos_1d(s, a, b)?;
                        let si = laplace_sin_1d(s, a, b)?;
                        let modulus = (gamma_fn(s) / (a * a + b * b).powf(s / 2.0)).powi(2);
                        worst = worst.max(rel(c * c + si * si, modulus));
                        let k = 1.7;
                        let scale = gamma_fn(s) / (a * a + b * b).powf(s / 2.0);
                        worst = worst.max((laplace_cos_1d(s, k * a, k * b)? * k.powf(s) - c).abs() / scale);
                        worst = worst.max((laplace_sin_1d(s, k * a, k * b)? * k.powf(s) - si).abs() / scale);
                    }
                    worst = worst.max(laplace_sin_1d(s, a, 0.0)?.abs());
                    worst = worst.max(rel(laplace_cos_1d(s, a, 0.0)?, gamma_fn(s) * a.powf(-s)));
                }
            }
            Ok(worst)
        })();
        vec![Check::from_result("damped", "damped-invariants", "closed-form radial factors", r, tol)
            .with_note("modulus, frequency scaling and zero frequency")]
    }

    fn series(&self) -> Vec<Check> {
        let tol = self.defaults.verify.series_tol;
        let n = self.defaults.verify.series_terms;
        let closed = FuncSpec64::parse_unary("0.5*u/(1-0.5*u)").expect("closed form parses");
        let mut out = Vec::new();
        for g_text in ["1", "exp(-r)"] {
            for gamma in [0.0, 1.0] {
                let r = (|| {
                    let g = FuncSpec64::parse_unary(g_text)?;
                    let sp = SeriesSpec64::geometric(0.5, 1, n)?;
                    let p = Params64::new(2.0, 2.0, gamma)?;
                    let quad = gamma2d(&closed, &g, &p, &self.cfg, Mode::Direct)?;
                    let radial = gamma_g(&g, p.total(), &self.cfg)?;
                    let first = beta_f_series(&sp, p.alpha, p.beta)?.product(&radial, g2g::Path::Series);
                    let second = gamma2d_series(&sp, &g, &p, &self.cfg)?;
                    let third = gamma2d_series_viagamma2d(&sp, &g, &p, &self.cfg)?;
                    Ok([first, second, third].iter().map(|x| rel(x.value, quad.value)).fold(0.0, f64::max))
                })();
                out.push(Check::from_result(
                    "series",
                    "taylor-series-forms",
                    format!("geometric 0.5, N={n}, g={g_text}, gamma={gamma}"),
                    r,
                    tol,
                ));
            }
        }
        out
    }

    fn hyp_closed_form(&self) -> Vec<Check> {
        let r = hyp2f1(1.0, 1.0, 2.0, 0.5, &self.cfg).map(|h| rel(h.value, 2.0 * std::f64::consts::LN_2));
        vec![Check::from_result(
            "hypergeometric",
            "euler-integral",
            "2F1(1,1;2;1/2) = 2 ln 2",
            r,
            self.defaults.verify.closed_form_tol,
        )]
    }

    fn hyp_paths(&self) -> Vec<Check> {
        let tol = self.defaults.verify.hyp_tol;
        let r = (|| {
            let mut worst = 0.0f64;
            for (a, b, c, z) in hyp_grid() {
                let e = hyp2f1(a, b, c, z, &self.cfg)?;
                let q = hyp2f1_gamma2d(a, b, c, z, &self.cfg)?;
                let s = hyp2f1_series(a, b, c, z, 1e-17)?;
                worst = worst.max(rel(e.value, s)).max(rel(q.value, s));
            }
            Ok(worst)
        })();
        vec![Check::from_result(
            "hypergeometric",
            "hypergeometric-paths",
            "Euler and quadrant integrals vs series",
            r,
            tol,
        )]
    }

    fn hyp_generalized(&self) -> Vec<Check> {
        let tol = self.defaults.verify.hyp_tol;
        let r = (|| {
            let f = FuncSpec64::parse_unary("t")?;
            let gs = ["1", "r", "exp(-r)"].map(FuncSpec64::parse_unary);
            let mut worst = 0.0f64;
            for (a, b, c, z) in hyp_grid() {
                let euler = hyp2f1_f(&f, a, b, c, z, &gs[0].clone()?, 0.0, HypRoute::Euler, &self.cfg)?;
                for gamma in [0.0, 1.0] {
                    for g in &gs {
                        let g = g.clone()?;
                        let w = hyp2f1_f(&f, a, b, c, z, &g, gamma, HypRoute::WithG, &self.cfg)?;
                        worst = worst.max(rel(w.value, euler.value));
                    }
                    let one = gs[0].clone()?;
                    let pl = hyp2f1_f(&f, a, b, c, z, &one, gamma, HypRoute::Plain, &self.cfg)?;
                    worst = worst.max(rel(pl.value, euler.value));
                }
            }
            Ok(worst)
        })();
        vec![Check::from_result(
            "hypergeometric",
            "hypergeometric-invariance",
            "f(t)=t across routes, g and gamma",
            r,
            tol,
        )]
    }

    fn separability(&self) -> Vec<Check> {
        let sep = &self.defaults.separability;
        let k = &self.defaults.kernels;
        let mut out = Vec::new();
        let run = |text: &str| FuncSpec64::parse_binary(text).and_then(|om| detect_separable(&om, sep.tol, sep.grid));
        for text in &k.separable {
            out.push(match run(text) {
                Ok(rep) if rep.verdict == Verdict::Separable => {
                    Check::measured("separability", "separable", text, rep.max_residual, sep.tol)
                }
                Ok(rep) => Check::measured("separability", "separable", text, rep.max_residual, sep.tol)
                    .with_note(format!("verdict {}", crate::commands::verdict_str(rep.verdict)))
                    .failed(),
                Err(e) => Check::from_result("separability", "separable", text, Err(e), sep.tol),
            });
        }
        let margin = 1e3 * sep.tol;
        for text in &k.non_separable {
            out.push(match run(text) {
                Ok(rep) => {
                    let ok = rep.verdict == Verdict::NotSeparable && rep.max_residual >= margin;
                    let mut c = Check::measured("separability", "not-separable", text, rep.max_residual, margin);
                    c.bound = Bound::Lower;
                    c.status = if ok { Status::Pass } else { Status::Fail };
                    c
                }
                Err(e) => Check::from_result("separability", "not-separable", text, Err(e), margin),
            });
        }
        for text in &k.vanishing {
            out.push(match run(text) {
                Ok(rep) => {
                    let mut c = Check::measured("separability", "not-certified", text, 0.0, 0.0)
                        .with_note(format!("verdict {}", crate::commands::verdict_str(rep.verdict)));
                    c.residual = None;
                    c.status = if rep.verdict == Verdict::NotCertified { Status::Pass } else { Status::Fail };
                    c
                }
                Err(e) => Check::from_result("separability", "not-certified", text, Err(e), 0.0),
            });
        }
        out
    }

    fn oracle_cross(&self, e: &Parsed) -> Vec<Check> {
        let r = (|| {
            let p = Params64::new(1.0, 1.0, 0.0)?;
            let quad = gamma2d(&e.f, &e.g, &p, &self.cfg, Mode::Factorized)?;
            let (f, g) = (e.f.clone(), e.g.clone());
            let integrand = FuncSpec64::from_fn2("f(u)g(s)exp(-s)", move |y: f64, x: f64| {
                let s = x + y;
                f.eval1(y / s).unwrap_or(f64::NAN) * g.eval1(s).unwrap_or(f64::NAN) * (-s).exp()
            });
            let (grid, bound) = grid2d_with_bound(&integrand, ORACLE_BOX, ORACLE_BOX, ORACLE_N)?;
            let (mc, se) = mc2d(&integrand, ORACLE_BOX, ORACLE_BOX, self.defaults.verify.mc_samples, self.seed)?;
            let a = (grid - mc).abs() / (3.0 * (bound + 3.0 * se));
            let b = (quad.value - grid).abs() / (3.0 * bound + 1e-12 * grid.abs());
            Ok(a.max(b))
        })();
        vec![Check::from_result("oracle", "oracle-agreement", &e.name, r, 1.0)
            .with_note("grid vs Monte-Carlo and quadrature vs grid, in units of the oracle error bounds")]
    }

    fn oracle_references(&self) -> Vec<Check> {
        references()
            .par_iter()
            .map(|r| {
                let res = r.reproduce().map(|(_, diff)| diff / r.oracle_tol);
                Check::from_result("oracle", "reference-constant", r.name, res, 1.0)
                    .with_note("distance to the frozen value in units of the oracle tolerance")
            })
            .collect()
    }
}

impl Check {
    fn failed(mut self) -> Self {
        self.status = Status::Fail;
        self
    }
}

pub const DAMP_A: [f64; 3] = [0.5, 1.0, 2.0];
pub const DAMP_B: [f64; 4] = [0.0, 0.5, 1.0, 3.0];
const ORACLE_BOX: f64 = 30.0;
const ORACLE_N: usize = 400;

/// `(a, b, c, z)` combinations exercised by the hypergeometric checks.
pub fn hyp_grid() -> Vec<(f64, f64, f64, f64)> {
    let mut out = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        for (b, c) in [(1.0, 2.0), (1.5, 2.5)] {
            for z in [-1.0, -0.5, 0.0, 0.5, 0.9] {
                out.push((a, b, c, z));
            }
        }
    }
    out
}

/// Runs the suite and wraps the rows in a report.
pub fn report(defaults: &Defaults, cfg: QuadConfig64, seed: u64, only: &[String], input: serde_json::Value) -> Report {
    let t = std::time::Instant::now();
    let checks = Suite::new(defaults, cfg, seed).run(only);
    let ms = crate::commands::ms_since(t);
    let passed = checks.iter().filter(|c| c.passed()).count();
    let result = json!({
        "all_passed": passed == checks.len(),
        "passed": passed,
        "total": checks.len(),
        "checks": checks,
    });
    let mut r = Report::new("verify", input, result);
    r.time("total", ms);
    r
}
