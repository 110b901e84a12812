use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wco_core::operators::{build_matrix, deviation_report};
use wco_core::spaces::{
    bergman_norm_quadrature_with, classify_weights, fock_norm_quadrature_with,
    hardy_norm_quadrature_with, norm, QuadratureConfig,
};
use wco_core::symbols::selfmap_interval;
use wco_core::verify::{full_report, VerificationReport};
use wco_core::{
    classify_space, SpaceClass, SpaceSpec, SymbolParams, WcoError, WeightSequence,
};

use crate::expr::{parse_complex, parse_poly, ParseError};
use crate::output::{emit_csv, emit_json, num};
use crate::{Cli, Command, ParamArgs, QuadFamily, SpaceArgs, SpaceFamily};

const DEFAULT_CANDIDATE_TOL: f64 = 1e-10;
const DEFAULT_QUAD_TOL: f64 = 1e-6;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Core(WcoError),
    Io(std::io::Error),
}

impl CliError {
    /// Numeric failures inside the library count as failed checks; every
    /// other error is an input problem.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(WcoError::Numeric(_)) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<WcoError> for CliError {
    fn from(e: WcoError) -> Self {
        CliError::Core(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Core(WcoError::Json(e))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Core(WcoError::Csv(e))
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<u8> {
    match &cli.command {
        Command::Classify {
            beta1,
            beta2,
            beta_file,
        } => classify(cli, *beta1, *beta2, beta_file.as_deref()),
        Command::Check { space, params } => {
            let spec = space_spec(space)?;
            let params = symbol_params(params)?;
            let report = full_report(&spec, params, cli.order)?;
            emit_report(cli, "check", &report)?;
            Ok(report.exit_code() as u8)
        }
        Command::Region { a0, lambda, rho } => region(cli, a0, *lambda, *rho),
        Command::Sweep { config } => crate::sweep::run(cli, config),
        Command::Quad {
            family,
            f,
            eta,
            b,
            radial,
            angular,
        } => quad(
            cli,
            *family,
            f,
            *eta,
            *b,
            QuadratureConfig {
                radial: *radial,
                angular: *angular,
            },
        ),
        Command::Report {
            config,
            matrix_out,
            deviation_out,
        } => report(cli, config, matrix_out.as_deref(), deviation_out.as_deref()),
    }
}

pub fn load_weights(path: &Path) -> CliResult<WeightSequence> {
    let text = fs::read_to_string(path)?;
    if let Ok(w) = serde_json::from_str::<WeightSequence>(&text) {
        return Ok(w);
    }
    let list: Vec<f64> = serde_json::from_str(&text)?;
    Ok(WeightSequence::explicit(list)?)
}

fn classify(
    cli: &Cli,
    beta1: Option<f64>,
    beta2: Option<f64>,
    beta_file: Option<&Path>,
) -> CliResult<u8> {
    let class = match beta_file {
        Some(path) => {
            let w = load_weights(path)?;
            classify_weights(&w, cli.tol.unwrap_or(DEFAULT_CANDIDATE_TOL))?
        }
        None => match (beta1, beta2) {
            (Some(b1), Some(b2)) => classify_space(b1, b2)?,
            _ => return Err(CliError::Usage("need beta1 and beta2 or --beta-file".into())),
        },
    };
    if cli.csv {
        let (lambda, eta, b_sq) = match class {
            SpaceClass::Exponential { b_sq, .. } => (None, None, Some(b_sq)),
            SpaceClass::Binomial { lambda, eta, .. } => (Some(lambda), Some(eta), None),
            SpaceClass::NotHospitable { lambda, .. } => (lambda, None, None),
        };
        let reason = match &class {
            SpaceClass::NotHospitable { reason, .. } => serde_json::to_string(reason)?,
            _ => String::new(),
        };
        let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
        let variant = match class {
            SpaceClass::Exponential { .. } => "Exponential",
            SpaceClass::Binomial { .. } => "Binomial",
            SpaceClass::NotHospitable { .. } => "NotHospitable",
        };
        emit_csv(
            &["variant", "lambda", "eta", "b_sq", "gamma", "reason"],
            vec![vec![
                variant.to_string(),
                opt(lambda),
                opt(eta),
                opt(b_sq),
                num(class.gamma()),
                reason,
            ]],
        )?;
    } else {
        emit_json("classify", &class)?;
    }
    Ok(if class.is_hospitable() { 0 } else { 1 })
}

fn require(v: Option<f64>, flag: &str, family: &str) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Usage(format!("--space {family} needs --{flag}")))
}

pub fn space_spec(args: &SpaceArgs) -> CliResult<SpaceSpec> {
    Ok(match args.space {
        SpaceFamily::Hardy => SpaceSpec::Hardy,
        SpaceFamily::Bergman => SpaceSpec::Bergman {
            eta: require(args.eta, "eta", "bergman")?,
        },
        SpaceFamily::Binomial => SpaceSpec::Binomial {
            lambda: require(args.lambda, "lambda", "binomial")?,
            eta: require(args.eta, "eta", "binomial")?,
        },
        SpaceFamily::Fock => SpaceSpec::Fock {
            b: require(args.b, "b", "fock")?,
        },
        SpaceFamily::BetaOmega => SpaceSpec::BetaOmega,
        SpaceFamily::Dirichlet => SpaceSpec::Dirichlet,
        SpaceFamily::Weights => {
            let path = args
                .beta_file
                .as_deref()
                .ok_or_else(|| CliError::Usage("--space weights needs --beta-file".into()))?;
            SpaceSpec::Weights {
                beta: load_weights(path)?.as_slice().to_vec(),
            }
        }
    })
}

fn symbol_params(args: &ParamArgs) -> CliResult<SymbolParams> {
    Ok(SymbolParams {
        a0: parse_complex(&args.a0)?,
        a1: parse_complex(&args.a1)?,
        c: parse_complex(&args.c)?,
    })
}

pub fn emit_report(cli: &Cli, command: &str, report: &VerificationReport) -> CliResult<()> {
    if cli.csv {
        emit_csv(
            &["name", "oracle", "residual", "tolerance", "pass", "notes"],
            report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.oracle.clone(),
                        num(c.residual),
                        num(c.tolerance),
                        c.pass.to_string(),
                        c.notes.clone(),
                    ]
                })
                .collect(),
        )
    } else {
        emit_json(command, report)
    }
}

fn region(cli: &Cli, a0: &str, lambda: f64, rho: f64) -> CliResult<u8> {
    let iv = selfmap_interval(parse_complex(a0)?, lambda, rho)?;
    if cli.csv {
        emit_csv(
            &["a0_mod", "lambda", "rho", "a1_min", "a1_max", "admissible"],
            vec![vec![
                num(iv.a0_mod),
                num(iv.lambda),
                num(iv.rho),
                num(iv.a1_min),
                num(iv.a1_max),
                iv.admissible.to_string(),
            ]],
        )?;
    } else {
        emit_json("region", &iv)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct QuadResult {
    family: String,
    degree: usize,
    series_norm_sq: f64,
    quadrature_norm_sq: f64,
    rel_diff: f64,
    tolerance: f64,
    pass: bool,
    radial: usize,
    angular: usize,
}

fn quad(
    cli: &Cli,
    family: QuadFamily,
    f: &str,
    eta: Option<f64>,
    b: Option<f64>,
    cfg: QuadratureConfig,
) -> CliResult<u8> {
    let poly = parse_poly(f, 0)?;
    let deg = poly.degree();
    let poly = poly.with_order(deg.max(1));
    let (label, weights, q) = match family {
        QuadFamily::Hardy => (
            "hardy".to_string(),
            WeightSequence::hardy(poly.order()),
            hardy_norm_quadrature_with(&poly, &cfg)?,
        ),
        QuadFamily::Bergman => {
            let eta = require(eta, "eta", "bergman")?;
            (
                format!("bergman eta={eta}"),
                WeightSequence::bergman(eta, poly.order())?,
                bergman_norm_quadrature_with(&poly, eta, &cfg)?,
            )
        }
        QuadFamily::Fock => {
            let b = require(b, "b", "fock")?;
            (
                format!("fock b={b}"),
                WeightSequence::fock(b, poly.order())?,
                fock_norm_quadrature_with(&poly, b * b, &cfg)?,
            )
        }
    };
    let s = norm(&poly, &weights)?.powi(2);
    let q = q * q;
    let tolerance = cli.tol.unwrap_or(DEFAULT_QUAD_TOL);
    let rel_diff = if s == 0.0 { q.abs() } else { (q - s).abs() / s };
    let result = QuadResult {
        family: label,
        degree: deg,
        series_norm_sq: s,
        quadrature_norm_sq: q,
        rel_diff,
        tolerance,
        pass: rel_diff <= tolerance,
        radial: cfg.radial,
        angular: cfg.angular,
    };
    if cli.csv {
        emit_csv(
            &["family", "degree", "series_norm_sq", "quadrature_norm_sq", "rel_diff", "pass"],
            vec![vec![
                result.family.clone(),
                deg.to_string(),
                num(s),
                num(q),
                num(rel_diff),
                result.pass.to_string(),
            ]],
        )?;
    } else {
        emit_json("quad", &result)?;
    }
    Ok(if result.pass { 0 } else { 1 })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportConfig {
    space: SpaceSpec,
    params: SymbolParams,
    order: Option<usize>,
}

fn report(
    cli: &Cli,
    config: &Path,
    matrix_out: Option<&Path>,
    deviation_out: Option<&Path>,
) -> CliResult<u8> {
    let cfg: ReportConfig = serde_json::from_str(&fs::read_to_string(config)?)?;
    let n = cfg.order.unwrap_or(cli.order);
    let report = full_report(&cfg.space, cfg.params, n)?;
    if matrix_out.is_some() || deviation_out.is_some() {
        let weights = cfg.space.weights(n)?;
        let m = build_matrix(&report.symbols, &weights, n)?;
        if let Some(path) = matrix_out {
            if path.extension().is_some_and(|e| e == "csv") {
                m.write_csv(fs::File::create(path)?)?;
            } else {
                fs::write(path, serde_json::to_string_pretty(&m)?)?;
            }
        }
        if let Some(path) = deviation_out {
            fs::write(path, serde_json::to_string_pretty(&deviation_report(&m))?)?;
        }
    }
    emit_report(cli, "report", &report)?;
    Ok(report.exit_code() as u8)
}
