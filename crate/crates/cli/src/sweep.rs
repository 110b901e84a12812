//! Parameter sweeps: every space in the config crossed with a grid of symbol
//! parameters and optional seeded random draws. Reports run in parallel and
//! come back in grid order.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wco_core::spaces::classify_weights;
use wco_core::symbols::unit_disk_interval;
use wco_core::verify::full_report;
use wco_core::{Complex64, SpaceClass, SpaceSpec, SymbolParams};

use crate::commands::{CliError, CliResult};
use crate::output::{emit_csv, emit_json, num};
use crate::Cli;

fn default_args() -> Vec<f64> {
    vec![0.0]
}

fn default_c() -> Vec<f64> {
    vec![1.0]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub spaces: Vec<SpaceSpec>,
    #[serde(default)]
    pub order: Option<usize>,
    #[serde(default)]
    pub a0_moduli: Vec<f64>,
    #[serde(default = "default_args")]
    pub a0_args: Vec<f64>,
    /// Position of `a₁` in the unit-disk self-map interval, in `[−1, 1]`.
    /// Spaces without a closed-form interval use `t·(1 − |a₀|)`.
    #[serde(default)]
    pub a1_fractions: Vec<f64>,
    #[serde(default = "default_c")]
    pub c_values: Vec<f64>,
    /// Extra random parameter draws per space.
    #[serde(default)]
    pub random: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub space: SpaceSpec,
    pub a0: [f64; 2],
    pub a1: f64,
    pub c: f64,
    pub class: String,
    pub all_pass: bool,
    pub hermitian_deviation: Option<f64>,
    pub kernel_identity: Option<f64>,
    pub ode_residual: Option<f64>,
    pub failed_checks: Vec<String>,
}

#[derive(Serialize)]
struct SweepOutput {
    order: usize,
    total: usize,
    passed: usize,
    rows: Vec<SweepRow>,
}

fn a1_at(class: &SpaceClass, a0: Complex64, t: f64) -> CliResult<f64> {
    Ok(if class.is_hospitable() {
        unit_disk_interval(class, a0)?.at_fraction(t)
    } else {
        t * (1.0 - a0.norm())
    })
}

/// Expands the config into `(space index, params)` in a fixed order.
pub fn expand(cfg: &SweepConfig, order: usize) -> CliResult<Vec<(usize, SymbolParams)>> {
    if cfg.c_values.is_empty() {
        return Err(CliError::Usage("c_values must not be empty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut jobs = Vec::new();
    for (s, space) in cfg.spaces.iter().enumerate() {
        let class = classify_weights(&space.weights(order)?, 1e-10)?;
        for &m in &cfg.a0_moduli {
            for &arg in &cfg.a0_args {
                let a0 = Complex64::from_polar(m, arg);
                for &t in &cfg.a1_fractions {
                    for &c in &cfg.c_values {
                        jobs.push((s, SymbolParams::new(a0, a1_at(&class, a0, t)?, c)));
                    }
                }
            }
        }
        for _ in 0..cfg.random {
            let a0 = Complex64::from_polar(
                rng.random_range(0.0..0.95),
                rng.random_range(0.0..2.0 * PI),
            );
            let t = rng.random_range(-1.0..=1.0);
            let c = cfg.c_values[rng.random_range(0..cfg.c_values.len())];
            jobs.push((s, SymbolParams::new(a0, a1_at(&class, a0, t)?, c)));
        }
    }
    Ok(jobs)
}

pub fn run(cli: &Cli, config: &Path) -> CliResult<u8> {
    let cfg: SweepConfig = serde_json::from_str(&fs::read_to_string(config)?)?;
    let order = cfg.order.unwrap_or(cli.order);
    let jobs = expand(&cfg, order)?;
    let rows: Vec<SweepRow> = jobs
        .par_iter()
        .map(|(s, p)| {
            let space = &cfg.spaces[*s];
            let report = full_report(space, *p, order)?;
            let residual = |name: &str| report.check(name).map(|c| c.residual);
            Ok(SweepRow {
                space: space.clone(),
                a0: [p.a0.re, p.a0.im],
                a1: p.a1.re,
                c: p.c.re,
                class: match report.class {
                    SpaceClass::Exponential { .. } => "Exponential",
                    SpaceClass::Binomial { .. } => "Binomial",
                    SpaceClass::NotHospitable { .. } => "NotHospitable",
                }
                .into(),
                all_pass: report.all_pass,
                hermitian_deviation: residual("hermitian_deviation"),
                kernel_identity: residual("kernel_identity"),
                ode_residual: residual("ode_residual"),
                failed_checks: report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name.clone())
                    .collect(),
            })
        })
        .collect::<CliResult<_>>()?;

    let passed = rows.iter().filter(|r| r.all_pass).count();
    let total = rows.len();
    if cli.csv {
        let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
        emit_csv(
            &[
                "space",
                "a0_re",
                "a0_im",
                "a1",
                "c",
                "class",
                "all_pass",
                "hermitian_deviation",
                "kernel_identity",
                "ode_residual",
                "failed_checks",
            ],
            rows.iter()
                .map(|r| {
                    Ok(vec![
                        serde_json::to_string(&r.space)?,
                        num(r.a0[0]),
                        num(r.a0[1]),
                        num(r.a1),
                        num(r.c),
                        r.class.clone(),
                        r.all_pass.to_string(),
                        opt(r.hermitian_deviation),
                        opt(r.kernel_identity),
                        opt(r.ode_residual),
                        r.failed_checks.join(";"),
                    ])
                })
                .collect::<CliResult<_>>()?,
        )?;
    } else {
        emit_json(
            "sweep",
            &SweepOutput {
                order,
                total,
                passed,
                rows,
            },
        )?;
    }
    Ok(if passed == total { 0 } else { 1 })
}
