//! Versioned JSON configs. Unknown fields are rejected so that a config
//! always means the same thing to every version that accepts it.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use dwell_core::func::FuncSpec;
use dwell_core::problem::Problem;
use dwell_core::radial::RadialProblem;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum NuOrTheta {
    Nu(f64),
    Theta(FuncSpec<f64>),
}

/// Interval problem: `{schema, a, b, lambda, nu_or_theta, f, m}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub schema: u32,
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    pub nu_or_theta: NuOrTheta,
    pub f: FuncSpec<f64>,
    pub m: usize,
}

/// Annulus problem: `{schema, n, r2, r1, lambda, nu, f, m}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialConfig {
    pub schema: u32,
    pub n: u32,
    pub r2: f64,
    pub r1: f64,
    pub lambda: f64,
    pub nu: f64,
    pub f: FuncSpec<f64>,
    pub m: usize,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
}

pub fn load_problem(path: &Path, m_override: Option<usize>) -> Result<Problem<f64>> {
    let cfg: ProblemConfig = read_json(path)?;
    if cfg.schema != SCHEMA_VERSION {
        bail!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            cfg.schema
        );
    }
    let m = m_override.unwrap_or(cfg.m);
    let problem = match cfg.nu_or_theta {
        NuOrTheta::Nu(nu) => Problem::with_nu(cfg.a, cfg.b, cfg.lambda, nu, cfg.f, m),
        NuOrTheta::Theta(theta) => Problem::new(cfg.a, cfg.b, cfg.lambda, theta, cfg.f, m),
    };
    problem.map_err(|e| anyhow::anyhow!("config describes an invalid problem: {e}"))
}

pub fn load_radial(path: &Path, m_override: Option<usize>) -> Result<RadialProblem<f64>> {
    let cfg: RadialConfig = read_json(path)?;
    if cfg.schema != SCHEMA_VERSION {
        bail!(
            "unsupported schema version {} (expected {SCHEMA_VERSION})",
            cfg.schema
        );
    }
    let m = m_override.unwrap_or(cfg.m);
    RadialProblem::new(cfg.n, cfg.r2, cfg.r1, cfg.lambda, cfg.nu, cfg.f, m)
        .map_err(|e| anyhow::anyhow!("config describes an invalid radial problem: {e}"))
}
