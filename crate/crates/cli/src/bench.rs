//! Direct versus factorized timing over a corpus and parameter grid.

use std::time::Instant;

use g2g::exprdsl::detect_separable;
use g2g::genspecial::{gamma2d, Mode};
use g2g::{FuncSpec64, Params64, QuadConfig64};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Integrand, JobConfig};
use crate::error::{config, CliError};
use crate::report::Report;

/// A separable integrand under benchmark.
pub struct Subject {
    pub name: String,
    pub f: FuncSpec64,
    pub g: FuncSpec64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchCell {
    pub entry: String,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub direct_value: f64,
    pub factorized_value: f64,
    pub rel_discrepancy: f64,
    #[serde(skip)]
    pub direct_ms: f64,
    #[serde(skip)]
    pub factorized_ms: f64,
}

impl BenchCell {
    pub fn speedup(&self) -> f64 {
        self.direct_ms / self.factorized_ms
    }
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

fn time_path(
    f: &FuncSpec64,
    g: &FuncSpec64,
    p: &Params64,
    cfg: &QuadConfig64,
    mode: Mode,
    warmup: usize,
    reps: usize,
) -> Result<(f64, f64), CliError> {
    for _ in 0..warmup {
        gamma2d(f, g, p, cfg, mode)?;
    }
    let mut times = Vec::with_capacity(reps);
    let mut value = f64::NAN;
    for _ in 0..reps {
        let t = Instant::now();
        value = gamma2d(f, g, p, cfg, mode)?.value;
        times.push(t.elapsed().as_secs_f64() * 1e3);
    }
    Ok((value, median(&mut times)))
}

/// Times both paths in every `(subject, cell)` pair, sequentially.
pub fn run_cells(
    subjects: &[Subject],
    cells: &[(f64, f64, f64)],
    cfg: &QuadConfig64,
    warmup: usize,
    reps: usize,
) -> Result<Vec<BenchCell>, CliError> {
    let mut out = Vec::with_capacity(subjects.len() * cells.len());
    for s in subjects {
        for &(alpha, beta, gamma) in cells {
            let p = Params64::new(alpha, beta, gamma)?;
            let (dv, dt) = time_path(&s.f, &s.g, &p, cfg, Mode::Direct, warmup, reps)?;
            let (fv, ft) = time_path(&s.f, &s.g, &p, cfg, Mode::Factorized, warmup, reps)?;
            let rel = if fv == 0.0 { (dv - fv).abs() } else { (dv - fv).abs() / fv.abs() };
            out.push(BenchCell {
                entry: s.name.clone(),
                alpha,
                beta,
                gamma,
                direct_value: dv,
                factorized_value: fv,
                rel_discrepancy: rel,
                direct_ms: dt,
                factorized_ms: ft,
            });
        }
    }
    Ok(out)
}

fn subjects(job: &JobConfig) -> Result<Vec<Subject>, CliError> {
    match &job.integrand {
        None => job
            .defaults
            .corpus
            .iter()
            .map(|e| {
                Ok(Subject {
                    name: e.name.clone(),
                    f: FuncSpec64::parse_unary(&e.f)?,
                    g: FuncSpec64::parse_unary(&e.g)?,
                })
            })
            .collect(),
        Some(Integrand::Separable { f, g }) => Ok(vec![Subject {
            name: format!("f={f}, g={g}"),
            f: FuncSpec64::parse_unary(f)?,
            g: FuncSpec64::parse_unary(g)?,
        }]),
        Some(Integrand::Omega { omega }) => {
            let om = FuncSpec64::parse_binary(omega)?;
            let sep = &job.defaults.separability;
            let rep = detect_separable(&om, sep.tol, sep.grid)?;
            match (rep.f_extracted, rep.g_extracted) {
                (Some(f), Some(g)) => Ok(vec![Subject { name: format!("omega={omega}"), f, g }]),
                _ => config("bench needs a separable integrand; the kernel was not certified separable"),
            }
        }
    }
}

pub fn cmd_bench(job: &JobConfig) -> Result<Report, CliError> {
    let subjects = subjects(job)?;
    let cells = job.defaults.grid.cells();
    let rows = run_cells(&subjects, &cells, &job.quad(), job.warmup, job.reps)?;
    let max_rel = rows.iter().map(|c| c.rel_discrepancy).fold(0.0, f64::max);
    let result = json!({
        "cells": rows,
        "cell_count": rows.len(),
        "max_rel_discrepancy": max_rel,
        "warmup": job.warmup,
        "reps": job.reps,
    });
    let mut report = Report::new("bench", serde_json::to_value(job).expect("job serializes"), result);
    let mut speedups: Vec<f64> = rows.iter().map(BenchCell::speedup).collect();
    let timing_rows: Vec<Value> = rows
        .iter()
        .map(|c| {
            json!({
                "entry": c.entry,
                "alpha": c.alpha,
                "beta": c.beta,
                "gamma": c.gamma,
                "direct_median": c.direct_ms,
                "factorized_median": c.factorized_ms,
                "speedup": c.speedup(),
            })
        })
        .collect();
    let faster = speedups.iter().filter(|&&s| s > 1.0).count();
    report.time("min_speedup", speedups.iter().copied().fold(f64::INFINITY, f64::min));
    report.time("median_speedup", median(&mut speedups));
    report.timings_ms.insert("faster_cells".into(), json!(faster));
    report.timings_ms.insert("cells".into(), Value::Array(timing_rows));
    Ok(report)
}
