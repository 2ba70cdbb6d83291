//! `eval`, `hyp`, `series` and `detect`.

use std::time::Instant;

use g2g::damped::{damped_scale, gamma2d_damped, DampMode, DampParams, Trig};
use g2g::exprdsl::{detect_separable, Verdict};
use g2g::genspecial::{beta_f, gamma2d, gamma2d_omega, Mode};
use g2g::hyperg::{hyp2f1, hyp2f1_f, hyp2f1_gamma2d, HypRoute};
use g2g::seriesrep::{beta_f_series, gamma2d_series, gamma2d_series_viagamma2d};
use g2g::{EvalResult64, FuncSpec64, Params64, SeriesSpec64};
use serde_json::{json, Value};

use crate::config::{Coefficients, Integrand, JobConfig, ModeArg, TrigArg};
use crate::error::CliError;
use crate::report::Report;

pub(crate) fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn result_json(r: &EvalResult64) -> Value {
    json!({
        "value": r.value,
        "err_est": r.err_est,
        "n_evals": r.n_evals,
        "truncation_point": r.truncation_point,
        "path": r.path.as_str(),
        "levels": r.levels,
        "slow": r.slow,
    })
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let v = f();
    (v, ms_since(t))
}

/// Comparison block for two evaluations of the same quantity.
fn discrepancy(d: &EvalResult64, f: &EvalResult64, scale: f64) -> Value {
    let abs = (d.value - f.value).abs();
    let scale = if scale > 0.0 { scale } else { f.value.abs().max(d.value.abs()) };
    let rel = if scale > 0.0 { abs / scale } else { abs };
    let threshold = 100.0 * (d.err_est + f.err_est) + 100.0 * f64::EPSILON * scale;
    json!({ "abs_discrepancy": abs, "rel_discrepancy": rel, "consistent": abs <= threshold })
}

fn merge(into: &mut Value, other: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, other) {
        a.extend(b);
    }
}

pub fn cmd_eval(job: &JobConfig) -> Result<Report, CliError> {
    let cfg = job.quad();
    let p = Params64::new(job.params.alpha, job.params.beta, job.params.gamma)?;
    let want_direct = matches!(job.mode, ModeArg::Direct | ModeArg::Both);
    let want_fact = matches!(job.mode, ModeArg::Factorized | ModeArg::Auto | ModeArg::Both);
    let mut timings = Vec::new();
    let mut result = json!({});

    let (direct, factorized, scale) = match job.integrand.as_ref().expect("validated") {
        Integrand::Separable { f, g } => {
            let f = FuncSpec64::parse_unary(f)?;
            let g = FuncSpec64::parse_unary(g)?;
            match &job.damping {
                None => {
                    let direct = if want_direct {
                        let (r, ms) = timed(|| gamma2d(&f, &g, &p, &cfg, Mode::Direct));
                        timings.push(("direct", ms));
                        Some(r?)
                    } else {
                        None
                    };
                    let fact = if want_fact {
                        let mode = if job.mode == ModeArg::Auto { Mode::Auto } else { Mode::Factorized };
                        let (r, ms) = timed(|| gamma2d(&f, &g, &p, &cfg, mode));
                        timings.push(("factorized", ms));
                        Some(r?)
                    } else {
                        None
                    };
                    (direct, fact, 0.0)
                }
                Some(d) => {
                    let dp = DampParams::new(d.a, d.b)?;
                    let kind = match d.trig {
                        TrigArg::Cos => Trig::Cos,
                        TrigArg::Sin => Trig::Sin,
                    };
                    let gg = if g.is_one() { None } else { Some(&g) };
                    let direct = if want_direct {
                        let (r, ms) = timed(|| gamma2d_damped(&f, gg, &p, &dp, kind, DampMode::Direct, &cfg));
                        timings.push(("direct", ms));
                        Some(r?)
                    } else {
                        None
                    };
                    let reduced = if want_fact {
                        let (r, ms) = timed(|| gamma2d_damped(&f, gg, &p, &dp, kind, DampMode::Reduced, &cfg));
                        timings.push(("factorized", ms));
                        Some(r?)
                    } else {
                        None
                    };
                    let bf = beta_f(&f, p.alpha, p.beta, &cfg)?.value;
                    (direct, reduced, damped_scale(bf, p.total(), &dp))
                }
            }
        }
        Integrand::Omega { omega } => {
            let om = FuncSpec64::parse_binary(omega)?;
            let direct = if want_direct {
                let (r, ms) = timed(|| gamma2d_omega(&om, &p, &cfg, false));
                timings.push(("direct", ms));
                Some(r?)
            } else {
                None
            };
            let sep = &job.defaults.separability;
            let (rep, ms) = timed(|| detect_separable(&om, sep.tol, sep.grid));
            timings.push(("detect", ms));
            let rep = rep?;
            merge(&mut result, json!({ "separable": rep.separable, "verdict": verdict_str(rep.verdict) }));
            let fact = match (want_fact, rep.f_extracted, rep.g_extracted) {
                (true, Some(f), Some(g)) => {
                    let (r, ms) = timed(|| gamma2d(&f, &g, &p, &cfg, Mode::Factorized));
                    timings.push(("factorized", ms));
                    Some(r?)
                }
                _ => None,
            };
            if want_fact && fact.is_none() && !want_direct {
                // no certified structure: fall back to the quadrant rule
                let (r, ms) = timed(|| gamma2d_omega(&om, &p, &cfg, false));
                timings.push(("direct", ms));
                (Some(r?), None, 0.0)
            } else {
                (direct, fact, 0.0)
            }
        }
    };

    let chosen = factorized.as_ref().or(direct.as_ref()).expect("at least one path ran");
    merge(
        &mut result,
        json!({
            "value": chosen.value,
            "err_est": chosen.err_est,
            "path": chosen.path.as_str(),
            "direct": direct.as_ref().map(result_json),
            "factorized": factorized.as_ref().map(result_json),
        }),
    );
    if let (Some(d), Some(f)) = (&direct, &factorized) {
        merge(&mut result, discrepancy(d, f, scale));
    }
    let mut report = Report::new("eval", serde_json::to_value(job).expect("job serializes"), result);
    for (k, ms) in timings {
        report.time(k, ms);
    }
    Ok(report)
}

pub(crate) fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Separable => "separable",
        Verdict::NotSeparable => "not_separable",
        Verdict::NotCertified => "not_certified",
    }
}

pub fn cmd_hyp(job: &JobConfig) -> Result<Report, CliError> {
    let cfg = job.quad();
    let h = job.hyp.as_ref().expect("validated");
    let mut timings = Vec::new();
    let (euler, ms) = timed(|| hyp2f1(h.a, h.b, h.c, h.z, &cfg));
    timings.push(("euler", ms));
    let euler = euler?;
    let mut result = json!({
        "value": euler.value,
        "err_est": euler.err_est,
        "slow": euler.slow,
        "euler": result_json(&euler),
    });
    if job.mode != ModeArg::Factorized {
        let (q, ms) = timed(|| hyp2f1_gamma2d(h.a, h.b, h.c, h.z, &cfg));
        timings.push(("gamma2d", ms));
        let q = q?;
        merge(&mut result, json!({ "gamma2d": result_json(&q) }));
        merge(&mut result, discrepancy(&q, &euler, 0.0));
    }
    if h.f.is_some() || h.g.is_some() {
        let f = FuncSpec64::parse_unary(h.f.as_deref().unwrap_or("1"))?;
        let g = FuncSpec64::parse_unary(h.g.as_deref().unwrap_or("1"))?;
        let mut routes = serde_json::Map::new();
        for (name, route) in [("euler", HypRoute::Euler), ("with_g", HypRoute::WithG), ("plain", HypRoute::Plain)] {
            let (r, ms) = timed(|| hyp2f1_f(&f, h.a, h.b, h.c, h.z, &g, h.gamma, route, &cfg));
            timings.push((name, ms));
            routes.insert(name.into(), result_json(&r?));
        }
        merge(&mut result, json!({ "generalized": routes }));
    }
    let mut report = Report::new("hyp", serde_json::to_value(job).expect("job serializes"), result);
    for (k, ms) in timings {
        report.time(k, ms);
    }
    Ok(report)
}

pub fn series_spec(c: &Coefficients) -> Result<SeriesSpec64, CliError> {
    Ok(match c {
        Coefficients::Listed { start, values } => SeriesSpec64::polynomial(*start, values.clone())?,
        Coefficients::Geometric { ratio, start, terms } => SeriesSpec64::geometric(*ratio, *start, *terms)?,
    })
}

pub fn cmd_series(job: &JobConfig) -> Result<Report, CliError> {
    let cfg = job.quad();
    let sp = series_spec(job.coeffs.as_ref().expect("validated"))?;
    let (alpha, beta, gamma) = (job.params.alpha, job.params.beta, job.params.gamma);
    let p = Params64::new(alpha, beta, gamma)?;
    let g = FuncSpec64::parse_unary(job.integrand_g().unwrap_or("1"))?;
    let mut timings = Vec::new();
    let (b, ms) = timed(|| beta_f_series(&sp, alpha, beta));
    timings.push(("beta_f_series", ms));
    let b = b?;
    let (quad, ms) = timed(|| beta_f(&sp.to_func(), alpha, beta, &cfg));
    timings.push(("beta_f_quadrature", ms));
    let quad = quad?;
    let (s2, ms) = timed(|| gamma2d_series(&sp, &g, &p, &cfg));
    timings.push(("gamma2d_series", ms));
    let s2 = s2?;
    let (s3, ms) = timed(|| gamma2d_series_viagamma2d(&sp, &g, &p, &cfg));
    timings.push(("gamma2d_series_viagamma2d", ms));
    let s3 = s3?;
    let mut result = json!({
        "value": b.value,
        "err_est": b.err_est,
        "terms": sp.len(),
        "complete": sp.is_complete(),
        "beta_f_series": result_json(&b),
        "beta_f_quadrature": result_json(&quad),
        "gamma2d_series": result_json(&s2),
        "gamma2d_series_viagamma2d": result_json(&s3),
    });
    merge(&mut result, discrepancy(&b, &quad, 0.0));
    let mut report = Report::new("series", serde_json::to_value(job).expect("job serializes"), result);
    for (k, ms) in timings {
        report.time(k, ms);
    }
    Ok(report)
}

pub const DETECT_U: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
pub const DETECT_S: [f64; 5] = [0.5, 1.0, 2.0, 5.0, 10.0];

pub fn cmd_detect(job: &JobConfig) -> Result<Report, CliError> {
    let Some(Integrand::Omega { omega }) = job.integrand.as_ref() else {
        unreachable!("validated");
    };
    let om = FuncSpec64::parse_binary(omega)?;
    let sep = &job.defaults.separability;
    let (rep, ms) = timed(|| detect_separable(&om, sep.tol, sep.grid));
    let rep = rep?;
    let sample = |h: &Option<FuncSpec64>, pts: &[f64], var: &str| -> Value {
        match h {
            None => Value::Null,
            Some(h) => pts.iter().map(|&x| json!({ var: x, "value": h.eval1(x).ok() })).collect(),
        }
    };
    let result = json!({
        "separable": rep.separable,
        "verdict": verdict_str(rep.verdict),
        "max_residual": rep.max_residual,
        "tol": sep.tol,
        "probes": rep.probes,
        "zero_probe": rep.zero_probe.map(|(u, s)| json!({ "u": u, "s": s })),
        "anchor": { "u": 0.5, "s": 1.0 },
        "f_extracted": sample(&rep.f_extracted, &DETECT_U, "u"),
        "g_extracted": sample(&rep.g_extracted, &DETECT_S, "s"),
    });
    let mut report = Report::new("detect", serde_json::to_value(job).expect("job serializes"), result);
    report.time("detect", ms);
    Ok(report)
}

impl JobConfig {
    fn integrand_g(&self) -> Option<&str> {
        match &self.integrand {
            Some(Integrand::Separable { g, .. }) => Some(g),
            _ => None,
        }
    }
}
