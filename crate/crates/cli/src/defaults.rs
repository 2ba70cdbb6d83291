//! Numerical defaults, read from the bundled `defaults.toml` and optionally
//! overridden by the file named in `G2G_DEFAULTS`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{config, CliError};

pub const DEFAULTS_ENV: &str = "G2G_DEFAULTS";
pub const BUNDLED: &str = include_str!("../defaults.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadDefaults {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_levels: u32,
    pub trunc_eps: f64,
}

impl QuadDefaults {
    pub fn to_config(&self) -> g2g::QuadConfig64 {
        let mut c = g2g::QuadConfig64::default();
        c.rel_tol = self.rel_tol;
        c.abs_tol = self.abs_tol;
        c.max_levels = self.max_levels;
        c.trunc_eps = self.trunc_eps;
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl Grid {
    /// All `(α, β, γ)` cells in row-major order.
    pub fn cells(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.alpha.len() * self.beta.len() * self.gamma.len());
        for &a in &self.alpha {
            for &b in &self.beta {
                for &g in &self.gamma {
                    out.push((a, b, g));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDefaults {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub identity_tol: f64,
    pub log_tol: f64,
    pub classical_tol: f64,
    pub factorization_tol: f64,
    pub fd_tol: f64,
    pub derivative_tol: f64,
    pub damped_tol: f64,
    pub invariant_tol: f64,
    pub series_tol: f64,
    pub hyp_tol: f64,
    pub closed_form_tol: f64,
    pub series_terms: usize,
    pub mc_samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchDefaults {
    pub warmup: usize,
    pub reps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityDefaults {
    pub tol: f64,
    pub grid: usize,
}

/// One test function pair with derivatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub f: String,
    pub g: String,
    pub fprime: String,
    pub gprime: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Kernels {
    pub separable: Vec<String>,
    pub non_separable: Vec<String>,
    pub vanishing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Defaults {
    pub quad: QuadDefaults,
    pub grid: Grid,
    pub verify: VerifyDefaults,
    pub bench: BenchDefaults,
    pub separability: SeparabilityDefaults,
    pub corpus: Vec<CorpusEntry>,
    pub kernels: Kernels,
}

fn merge(base: &mut toml::Value, over: toml::Value) {
    match (base, over) {
        (toml::Value::Table(b), toml::Value::Table(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

impl Defaults {
    pub fn bundled() -> Self {
        toml::from_str(BUNDLED).expect("bundled defaults parse")
    }

    /// Bundled defaults with `overlay` (TOML text) merged on top.
    pub fn with_overlay(overlay: &str) -> Result<Self, CliError> {
        let mut base: toml::Value = toml::from_str(BUNDLED).expect("bundled defaults parse");
        let over: toml::Value = match toml::from_str(overlay) {
            Ok(v) => v,
            Err(e) => return config(format!("defaults override: {e}")),
        };
        merge(&mut base, over);
        base.try_into().or_else(|e| config(format!("defaults override: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).or_else(|e| config(format!("{}: {e}", path.display())))?;
        Self::with_overlay(&text)
    }

    /// Bundled defaults, overridden by `G2G_DEFAULTS` when set.
    pub fn load() -> Result<Self, CliError> {
        match std::env::var_os(DEFAULTS_ENV) {
            Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
            _ => Ok(Self::bundled()),
        }
    }
}

/// A corpus override file: `[[corpus]]` entries replacing the default list.
#[derive(Debug, Deserialize)]
struct CorpusFile {
    corpus: Vec<CorpusEntry>,
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>, CliError> {
    let text = std::fs::read_to_string(path).or_else(|e| config(format!("{}: {e}", path.display())))?;
    let file: CorpusFile = toml::from_str(&text).or_else(|e| config(format!("{}: {e}", path.display())))?;
    Ok(file.corpus)
}
