//! Command-line surface and the validated job description built from it.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::defaults::Defaults;
use crate::error::{config, CliError};

#[derive(Debug, Parser)]
#[command(name = "g2g", version, about = "Generalized gamma/beta functions and quadrant double integrals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    /// Evaluate one double integral by the direct and factorized paths.
    Eval,
    /// Check every identity on the corpus.
    Verify,
    /// Time direct against factorized evaluation over the parameter grid.
    Bench,
    /// Gauss hypergeometric function and its generalization.
    Hyp,
    /// Series representation from Taylor coefficients of f.
    Series,
    /// Test a two-variable kernel for separability.
    Detect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Direct,
    Factorized,
    Auto,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigArg {
    Cos,
    Sin,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// f(u) on (0,1), in the variable u (or t).
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// g(r) on (0,inf), in the variable r (or s).
    #[arg(long, global = true)]
    pub g: Option<String>,
    /// General kernel Omega(y, x) in the variables x and y.
    #[arg(long, global = true)]
    pub omega: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Exponent of y in the Omega form.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Exponent of x in the Omega form.
    #[arg(long = "omega-exp", global = true, allow_negative_numbers = true)]
    pub omega_exp: Option<f64>,
    /// Exponent of (x+y) in the Omega form.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Damping rate for eval, first upper parameter for hyp.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Damping frequency for eval, second upper parameter for hyp.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Lower parameter for hyp.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub z: Option<f64>,
    /// Damping factor kind for eval with --a.
    #[arg(long, global = true, value_enum)]
    pub trig: Option<TrigArg>,
    /// Relative tolerance of every quadrature.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the Monte-Carlo cross-check of verify.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Comma-separated check groups for verify.
    #[arg(long, global = true, value_delimiter = ',')]
    pub only: Vec<String>,
    /// TOML file with [[corpus]] entries replacing the default corpus.
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    /// Taylor coefficients as value@index pairs, e.g. "1@1,0.5@2".
    #[arg(long, global = true)]
    pub coeffs: Option<String>,
    /// Geometric coefficients a_n = ratio^n instead of --coeffs.
    #[arg(long, global = true)]
    pub geometric: Option<f64>,
    /// Number of geometric terms.
    #[arg(long, global = true)]
    pub terms: Option<usize>,
    /// First index of the geometric coefficients.
    #[arg(long, global = true)]
    pub start: Option<usize>,
    #[arg(long, global = true)]
    pub warmup: Option<usize>,
    #[arg(long, global = true)]
    pub reps: Option<usize>,
}

/// Integrand source of an eval or bench job.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrand {
    Separable { f: String, g: String },
    Omega { omega: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsIn {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Damping {
    pub a: f64,
    pub b: f64,
    pub trig: TrigArg,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypIn {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
    pub f: Option<String>,
    pub g: Option<String>,
    pub gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    Listed { start: usize, values: Vec<f64> },
    Geometric { ratio: f64, start: usize, terms: usize },
}

/// A validated job. Serialized verbatim as the `input` block of the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JobConfig {
    pub command: CommandKind,
    pub integrand: Option<Integrand>,
    pub params: ParamsIn,
    pub damping: Option<Damping>,
    pub hyp: Option<HypIn>,
    pub coeffs: Option<Coefficients>,
    pub rel_tol: f64,
    pub mode: ModeArg,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub only: Vec<String>,
    #[serde(skip)]
    pub defaults: Defaults,
    pub warmup: usize,
    pub reps: usize,
}

impl JobConfig {
    pub fn quad(&self) -> g2g::QuadConfig64 {
        self.defaults.quad.to_config().with_rel_tol(self.rel_tol)
    }

    pub fn from_cli(cli: Cli, defaults: Defaults) -> Result<Self, CliError> {
        let o = cli.opts;
        let mut defaults = defaults;
        if let Some(path) = &o.corpus {
            defaults.corpus = crate::defaults::load_corpus(path)?;
        }
        let rel_tol = o.tol.unwrap_or(defaults.quad.rel_tol);
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return config(format!("--tol must lie in (0, 1), got {rel_tol}"));
        }
        let integrand = match cli.command {
            CommandKind::Eval | CommandKind::Bench => match (&o.omega, &o.f, &o.g) {
                (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                    return config("give either --f/--g or --omega, not both");
                }
                (Some(w), None, None) => Some(Integrand::Omega { omega: w.clone() }),
                (None, None, None) if cli.command == CommandKind::Bench => None,
                (None, None, None) => return config("eval needs --f and --g, or --omega"),
                (None, f, g) => Some(Integrand::Separable {
                    f: f.clone().unwrap_or_else(|| "1".into()),
                    g: g.clone().unwrap_or_else(|| "1".into()),
                }),
            },
            CommandKind::Detect => match &o.omega {
                Some(w) => Some(Integrand::Omega { omega: w.clone() }),
                None => return config("detect needs --omega"),
            },
            _ => None,
        };
        let omega_form = matches!(integrand, Some(Integrand::Omega { .. }));
        let params = if omega_form {
            ParamsIn {
                alpha: o.nu.or(o.alpha).unwrap_or(1.0),
                beta: o.omega_exp.or(o.beta).unwrap_or(1.0),
                gamma: o.lambda.or(o.gamma).unwrap_or(0.0),
            }
        } else {
            ParamsIn { alpha: o.alpha.unwrap_or(1.0), beta: o.beta.unwrap_or(1.0), gamma: o.gamma.unwrap_or(0.0) }
        };
        let damping = match (cli.command, o.a, o.b) {
            (CommandKind::Eval, Some(a), b) => {
                if omega_form {
                    return config("damping applies to --f/--g integrands only");
                }
                Some(Damping { a, b: b.unwrap_or(0.0), trig: o.trig.unwrap_or(TrigArg::Cos) })
            }
            (CommandKind::Eval, None, Some(_)) => return config("--b needs --a for a damped eval"),
            _ => None,
        };
        let hyp = if cli.command == CommandKind::Hyp {
            let (Some(a), Some(b), Some(c), Some(z)) = (o.a, o.b, o.c, o.z) else {
                return config("hyp needs --a, --b, --c and --z");
            };
            Some(HypIn { a, b, c, z, f: o.f.clone(), g: o.g.clone(), gamma: o.gamma.unwrap_or(0.0) })
        } else {
            None
        };
        let coeffs = if cli.command == CommandKind::Series {
            Some(match (&o.coeffs, o.geometric) {
                (Some(_), Some(_)) => return config("give either --coeffs or --geometric"),
                (Some(text), None) => parse_coeffs(text)?,
                (None, Some(ratio)) => {
                    Coefficients::Geometric { ratio, start: o.start.unwrap_or(1), terms: o.terms.unwrap_or(60) }
                }
                (None, None) => return config("series needs --coeffs or --geometric"),
            })
        } else {
            None
        };
        let only = o.only.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect::<Vec<_>>();
        if cli.command == CommandKind::Verify {
            for group in &only {
                if !crate::verify::GROUPS.contains(&group.as_str()) {
                    return config(format!(
                        "unknown check group '{group}'; known: {}",
                        crate::verify::GROUPS.join(", ")
                    ));
                }
            }
        }
        let reps = o.reps.unwrap_or(defaults.bench.reps);
        if reps == 0 {
            return config("--reps must be at least 1");
        }
        Ok(Self {
            command: cli.command,
            integrand,
            params,
            damping,
            hyp,
            coeffs,
            rel_tol,
            mode: o.mode.unwrap_or(ModeArg::Both),
            format: o.format.unwrap_or(Format::Json),
            out: o.out,
            seed: o.seed.unwrap_or(defaults.verify.seed),
            only,
            warmup: o.warmup.unwrap_or(defaults.bench.warmup),
            reps,
            defaults,
        })
    }
}

/// Parses `"v@i,v@i,…"` into a dense coefficient list starting at the
/// smallest index; missing indices are zero.
pub fn parse_coeffs(text: &str) -> Result<Coefficients, CliError> {
    let mut pairs = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((v, i)) = item.split_once('@') else {
            return config(format!("coefficient '{item}' is not of the form value@index"));
        };
        let v: f64 = v.trim().parse().or_else(|_| config(format!("bad coefficient value in '{item}'")))?;
        let i: usize = i.trim().parse().or_else(|_| config(format!("bad coefficient index in '{item}'")))?;
        pairs.push((i, v));
    }
    if pairs.is_empty() {
        return config("no coefficients given");
    }
    pairs.sort_by_key(|p| p.0);
    if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
        return config("duplicate coefficient index");
    }
    let start = pairs[0].0;
    let end = pairs[pairs.len() - 1].0;
    let mut values = vec![0.0; end - start + 1];
    for (i, v) in pairs {
        values[i - start] = v;
    }
    Ok(Coefficients::Listed { start, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(args: &[&str]) -> Result<JobConfig, CliError> {
        let mut full = vec!["g2g"];
        full.extend_from_slice(args);
        JobConfig::from_cli(Cli::try_parse_from(full).unwrap(), Defaults::bundled())
    }

    #[test]
    fn eval_requires_one_integrand_form() {
        assert!(job(&["eval"]).is_err());
        assert!(job(&["eval", "--f", "u", "--omega", "x*y"]).is_err());
        let j = job(&["eval", "--omega", "x+y^2", "--nu", "2"]).unwrap();
        assert_eq!(j.params.alpha, 2.0);
        let j = job(&["eval", "--f", "u"]).unwrap();
        assert_eq!(j.integrand, Some(Integrand::Separable { f: "u".into(), g: "1".into() }));
    }

    #[test]
    fn detect_requires_omega() {
        assert!(matches!(job(&["detect", "--f", "u"]), Err(CliError::Config(_))));
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_coeffs("1@1").unwrap(), Coefficients::Listed { start: 1, values: vec![1.0] });
        assert_eq!(parse_coeffs("2@3, 1@1").unwrap(), Coefficients::Listed { start: 1, values: vec![1.0, 0.0, 2.0] });
        assert!(parse_coeffs("1@1,2@1").is_err());
        assert!(parse_coeffs("x").is_err());
    }

    #[test]
    fn negative_values_and_groups() {
        let j = job(&["hyp", "--a", "0.5", "--b", "1.5", "--c", "2.5", "--z", "-1"]).unwrap();
        assert_eq!(j.hyp.unwrap().z, -1.0);
        assert!(job(&["verify", "--only", "nonsense"]).is_err());
        assert!(job(&["verify", "--tol", "2"]).is_err());
    }
}
