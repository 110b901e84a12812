//! Independent oracles and the combined verification report.
//!
//! Hermitianness is tested through separate routes that share no code past
//! the series arithmetic: matrix symmetry, the moment conditions on `1, z, z²`,
//! the adjoint-kernel identity, and the ODE that the generating function must
//! satisfy. For a correct implementation they agree in verdict.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WcoError};
use crate::operators::{
    build_matrix, conjugation_check, deviation_report, fock_bound, kernel_identity_residual,
    moment_conditions, spectral_norm, OperatorMatrix,
};
use crate::series::TruncatedSeries;
use crate::spaces::{
    bergman_norm_quadrature, classify_space, classify_weights, fock_norm_quadrature,
    hardy_norm_quadrature, norm, verify_candidate, CandidateCheck, Rejection, SpaceClass,
    WeightSequence, TOL_CLASS,
};
use crate::symbols::{
    synthesize, synthesize_from_weights, unit_disk_interval, SymbolPair, SymbolParams,
    INTERVAL_SLACK,
};

/// Tolerance for identities that hold exactly up to roundoff.
pub const TOL_EXACT: f64 = 1e-10;
/// Tolerance for the truncated adjoint-kernel identity.
pub const TOL_KERNEL: f64 = 1e-8;
/// Relative tolerance for quadrature against series norms.
pub const TOL_QUADRATURE: f64 = 1e-6;
/// Residuals above this are treated as definite violations.
pub const TOL_VIOLATED: f64 = 1e-3;

/// Smallest series order used for the ODE residual in [`full_report`].
pub const ODE_MIN_ORDER: usize = 96;

/// Kernel point used by [`full_report`].
pub const REPORT_KERNEL_POINT: Complex64 = Complex64::new(0.3, 0.2);

/// Points on the circles `|z| ∈ {0.1, 0.3, 0.5}` at arguments `2πm/12`.
pub fn default_ode_samples() -> Vec<Complex64> {
    let mut out = Vec::with_capacity(36);
    for r in [0.1, 0.3, 0.5] {
        for m in 0..12 {
            out.push(Complex64::from_polar(r, 2.0 * PI * m as f64 / 12.0));
        }
    }
    out
}

/// `max_z |β(1)⁴k′(z)²/k(z) − (β(2)²/2)k″(z)|` over the samples.
///
/// `k` must satisfy `k(0) = 1` and `k̂(1) = 1/β(1)²` to within `1e-12`.
pub fn ode_residual(
    k: &TruncatedSeries,
    beta1: f64,
    beta2: f64,
    samples: &[Complex64],
) -> Result<f64> {
    if k.order() < 2 {
        return Err(WcoError::usage("ODE residual needs a series of order >= 2"));
    }
    let b1_sq = beta1 * beta1;
    if (k.coeff(0) - 1.0).norm() > 1e-12 || (k.coeff(1) - 1.0 / b1_sq).norm() > 1e-12 {
        return Err(WcoError::domain(format!(
            "initial conditions fail: k(0) = {}, k'(0) = {}, 1/beta1^2 = {}",
            k.coeff(0),
            k.coeff(1),
            1.0 / b1_sq
        )));
    }
    let dk = k.derivative();
    let ddk = dk.derivative();
    let mut worst: f64 = 0.0;
    for &z in samples {
        let kz = k.evaluate(z);
        if kz.norm() == 0.0 {
            return Err(WcoError::Numeric(format!("k vanishes at sample {z}")));
        }
        let d = dk.evaluate(z);
        let r = b1_sq * b1_sq * d * d / kz - beta2 * beta2 / 2.0 * ddk.evaluate(z);
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Symbols read back from the first two columns of a matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveredSymbols {
    pub params: SymbolParams,
    pub psi_hat: TruncatedSeries,
    pub phi_hat: TruncatedSeries,
    /// `max|col₁|/(|a₁||c|)`, reported only when `|a₁| < 1e-6`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<f64>,
}

/// `ψ̂(i) = M[i][0]/β(i)`, `(ψφ)^(i) = M[i][1]·β(1)/β(i)`, `φ = ψφ/ψ`.
pub fn recover_symbols(m: &OperatorMatrix, beta: &WeightSequence) -> Result<RecoveredSymbols> {
    let n = m.order();
    if n < 1 {
        return Err(WcoError::usage("recovery needs at least two columns"));
    }
    if beta.order() < n {
        return Err(WcoError::usage(format!(
            "weights of order {} cannot cover a matrix of order {n}",
            beta.order()
        )));
    }
    let psi = TruncatedSeries::new((0..=n).map(|i| m.entry(i, 0) / beta.beta(i)).collect())?;
    let c = psi.coeff(0);
    if c.norm() == 0.0 {
        return Err(WcoError::Numeric(
            "psi(0) = 0: symbols cannot be recovered from the matrix".into(),
        ));
    }
    let b1 = beta.beta(1);
    let psi_phi =
        TruncatedSeries::new((0..=n).map(|i| m.entry(i, 1) * b1 / beta.beta(i)).collect())?;
    let phi = psi_phi.div(&psi)?;
    let a1 = phi.coeff(1);
    let condition = if a1.norm() < 1e-6 {
        let col = (0..=n).map(|i| m.entry(i, 1).norm()).fold(0.0, f64::max);
        Some(col / (a1.norm() * c.norm()).max(f64::MIN_POSITIVE))
    } else {
        None
    };
    Ok(RecoveredSymbols {
        params: SymbolParams {
            a0: phi.coeff(0),
            a1,
            c,
        },
        psi_hat: psi,
        phi_hat: phi,
        condition,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormEquivalence {
    pub hardy: f64,
    pub beta_omega: f64,
    pub ratio_ok: bool,
}

/// `‖f‖_{H²} ≤ ‖f‖_{β_ω} ≤ 2‖f‖_{H²}` with `β_ω = (1, 2, 2, …)`.
pub fn norm_equivalence_check(f: &TruncatedSeries) -> NormEquivalence {
    let head = f.coeff(0).norm_sqr();
    let tail: f64 = f.coeffs()[1..].iter().map(|c| c.norm_sqr()).sum();
    let hardy = (head + tail).sqrt();
    let beta_omega = (head + 4.0 * tail).sqrt();
    let slack = 1e-15 * hardy;
    NormEquivalence {
        hardy,
        beta_omega,
        ratio_ok: hardy <= beta_omega + slack && beta_omega <= 2.0 * hardy + slack,
    }
}

/// A space named by family or by an explicit weight list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum SpaceSpec {
    Hardy,
    Bergman { eta: f64 },
    Binomial { lambda: f64, eta: f64 },
    Fock { b: f64 },
    BetaOmega,
    Dirichlet,
    Weights { beta: Vec<f64> },
}

impl SpaceSpec {
    pub fn weights(&self, order: usize) -> Result<WeightSequence> {
        match self {
            SpaceSpec::Hardy => Ok(WeightSequence::hardy(order)),
            SpaceSpec::Bergman { eta } => WeightSequence::bergman(*eta, order),
            SpaceSpec::Binomial { lambda, eta } => {
                WeightSequence::from_class(&SpaceClass::binomial(*lambda, *eta)?, order)
            }
            SpaceSpec::Fock { b } => WeightSequence::fock(*b, order),
            SpaceSpec::BetaOmega => Ok(WeightSequence::beta_omega(order)),
            SpaceSpec::Dirichlet => Ok(WeightSequence::dirichlet(order)),
            SpaceSpec::Weights { beta } => WeightSequence::explicit(beta.clone())?.truncate(order),
        }
    }

    /// Norm from an integral over the disk or plane, for spaces that have one.
    fn quadrature_norm(&self, f: &TruncatedSeries) -> Option<Result<f64>> {
        let eta = match *self {
            SpaceSpec::Hardy => 1.0,
            SpaceSpec::Bergman { eta } => eta,
            SpaceSpec::Binomial { lambda: 1.0, eta } => eta,
            SpaceSpec::Fock { b } => return Some(fock_norm_quadrature(f, b * b)),
            _ => return None,
        };
        if eta == 1.0 {
            Some(hardy_norm_quadrature(f))
        } else if eta > 1.0 {
            Some(bergman_norm_quadrature(f, eta))
        } else {
            None
        }
    }
}

/// One residual with its tolerance; `pass` is `residual <= tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The independent route that produced the residual.
    pub oracle: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub notes: String,
}

impl Check {
    fn new(name: &str, oracle: &str, residual: f64, tolerance: f64, notes: String) -> Self {
        Self {
            name: name.into(),
            oracle: oracle.into(),
            residual,
            tolerance,
            pass: residual <= tolerance,
            notes,
        }
    }

    fn failed(name: &str, oracle: &str, tolerance: f64, err: &WcoError) -> Self {
        Self::new(name, oracle, f64::INFINITY, tolerance, err.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Subject {
    pub space: SpaceSpec,
    pub params: SymbolParams,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub subject: Subject,
    pub class: SpaceClass,
    pub symbols: SymbolPair,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

impl VerificationReport {
    /// `0` when every check passes, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass {
            0
        } else {
            1
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn classification_check(weights: &WeightSequence, class: &SpaceClass) -> Result<Check> {
    let candidate = classify_space(weights.beta1()?, weights.beta2()?)?;
    let (residual, notes) = match (class, &candidate) {
        (SpaceClass::NotHospitable { reason, lambda, .. }, _) => match reason {
            Rejection::LambdaNegative => (
                -lambda.unwrap_or(0.0),
                format!("lambda = {} < 0", lambda.unwrap_or(f64::NAN)),
            ),
            Rejection::LambdaExceedsOne => {
                let l = lambda.unwrap_or(f64::NAN);
                (l - 1.0, format!("lambda = {l} > 1"))
            }
            Rejection::CoefficientMismatch {
                index,
                expected,
                found,
            } => (
                (expected - found).abs() / expected,
                format!(
                    "weights leave the candidate family at j = {index}: 1/beta(j)^2 = {expected}, family gives {found}"
                ),
            ),
        },
        _ => match verify_candidate(weights, &candidate, TOL_EXACT)? {
            CandidateCheck::Ok { max_rel_deviation } => (
                max_rel_deviation,
                format!("gamma = {}; weights match the family", class.gamma()),
            ),
            CandidateCheck::Mismatch { index, .. } => (
                f64::INFINITY,
                format!("unexpected mismatch at j = {index}"),
            ),
        },
    };
    Ok(Check::new(
        "classification",
        "generating-function family",
        residual.max(0.0),
        TOL_CLASS,
        notes,
    ))
}

/// Runs every applicable check for one space and parameter set.
///
/// Hospitable spaces get symbols from the closed forms; any other space gets
/// the symbols a Hermitian operator would need, built from its own generating
/// function, so the checks show where the structure breaks.
pub fn full_report(
    space: &SpaceSpec,
    params: SymbolParams,
    n: usize,
) -> Result<VerificationReport> {
    if n < 2 {
        return Err(WcoError::usage("verification needs order >= 2"));
    }
    let weights = space.weights(n)?;
    let class = classify_weights(&weights, TOL_EXACT)?;
    let symbols = if class.is_hospitable() {
        synthesize(&class, params, n)?
    } else {
        synthesize_from_weights(&weights, params, n)?
    };

    let mut checks = vec![classification_check(&weights, &class)?];

    if class.is_hospitable() {
        let iv = unit_disk_interval(&class, params.a0)?;
        let a1 = params.a1.re;
        let outside = if !iv.admissible {
            f64::INFINITY
        } else {
            (iv.a1_min - a1).max(a1 - iv.a1_max).max(0.0)
        };
        let mut notes = format!("a1 interval [{}, {}]", iv.a1_min, iv.a1_max);
        if iv.admissible
            && ((a1 - iv.a1_min).abs() <= INTERVAL_SLACK || (a1 - iv.a1_max).abs() <= INTERVAL_SLACK)
        {
            notes.push_str("; a1 sits on an endpoint, phi touches the unit circle");
        }
        if !iv.admissible {
            notes.push_str("; |a0| >= 1");
        }
        checks.push(Check::new("self_map", "closed-form interval", outside, INTERVAL_SLACK, notes));
    }

    let m = build_matrix(&symbols, &weights, n)?;
    let scale = m.entries().iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = TOL_EXACT * scale;
    let dev = deviation_report(&m);
    checks.push(Check::new(
        "hermitian_deviation",
        "finite-section matrix",
        dev.deviation,
        tol,
        format!(
            "largest |M[i][j] - conj(M[j][i])| at {:?}; tolerance 1e-10 x max|M| = {scale:.3e}",
            dev.argmax
        ),
    ));
    let mc = moment_conditions(&m);
    checks.push(Check::new(
        "moment_conditions",
        "adjoint on 1, z, z^2",
        mc.max(),
        tol,
        format!("m0 = {:.3e}, m1 = {:.3e}, m2 = {:.3e}", mc.m0, mc.m1, mc.m2),
    ));

    // The ODE is sampled on |z| <= 0.5, so a short truncation would show up
    // as a residual; use a longer one whenever the space provides it.
    let ode_weights = space.weights(n.max(ODE_MIN_ORDER)).unwrap_or_else(|_| weights.clone());
    let k = ode_weights.generating_series();
    checks.push(
        match ode_residual(&k, weights.beta(1), weights.beta(2), &default_ode_samples()) {
            Ok(r) => Check::new(
                "ode_residual",
                "generating-function ODE",
                r,
                TOL_EXACT,
                "beta(1)^4 k'^2/k - (beta(2)^2/2) k'' on |z| <= 0.5".into(),
            ),
            Err(e) => Check::failed("ode_residual", "generating-function ODE", TOL_EXACT, &e),
        },
    );

    checks.push(
        match kernel_identity_residual(&symbols, &weights, REPORT_KERNEL_POINT, n) {
            Ok(ki) => Check::new(
                "kernel_identity",
                "reproducing kernels",
                ki.residual,
                TOL_KERNEL,
                match ki.tail_bound {
                    Some(t) => format!("w = 0.3+0.2i; dropped kernel tail norm {t:.3e}"),
                    None => "w = 0.3+0.2i; no closed-form tail bound for these weights".into(),
                },
            ),
            Err(e) => Check::failed("kernel_identity", "reproducing kernels", TOL_KERNEL, &e),
        },
    );

    match recover_symbols(&m, &weights) {
        Ok(rec) => {
            let p = rec.params;
            let err = (p.a0 - params.a0)
                .norm()
                .max((p.a1 - params.a1).norm())
                .max((p.c - params.c).norm());
            let mut notes = format!("recovered a0 = {}, a1 = {}, c = {}", p.a0, p.a1, p.c);
            if let Some(cond) = rec.condition {
                notes.push_str(&format!("; |a1| < 1e-6, condition estimate {cond:.3e}"));
            }
            checks.push(Check::new(
                "symbol_recovery",
                "matrix columns 0 and 1",
                err,
                TOL_EXACT,
                notes,
            ));
            checks.push(Check::new(
                "real_parameters",
                "matrix columns 0 and 1",
                p.a1.im.abs().max(p.c.im.abs()),
                TOL_EXACT,
                "Hermitian operators have real psi(0) and phi'(0)".into(),
            ));
        }
        Err(e) => checks.push(Check::failed(
            "symbol_recovery",
            "matrix columns 0 and 1",
            TOL_EXACT,
            &e,
        )),
    }

    match class {
        SpaceClass::Binomial { lambda, .. } if lambda < 1.0 => {
            checks.push(match conjugation_check(&symbols, n) {
                Ok(r) => Check::new(
                    "dilation_conjugation",
                    "unitary dilation z -> sqrt(lambda) z",
                    r,
                    TOL_EXACT * scale,
                    format!("lambda = {lambda}"),
                ),
                Err(e) => Check::failed(
                    "dilation_conjugation",
                    "unitary dilation z -> sqrt(lambda) z",
                    TOL_EXACT,
                    &e,
                ),
            });
        }
        SpaceClass::Exponential { .. } => {
            checks.push(match fock_bound(&symbols) {
                Ok(bound) => {
                    let sigma = spectral_norm(&m);
                    Check::new(
                        "fock_bound",
                        "analytic norm bound",
                        ((sigma * sigma - bound) / bound).max(0.0),
                        TOL_EXACT,
                        format!(
                            "finite-section norm {sigma:.6e} against bound sqrt = {:.6e}",
                            bound.sqrt()
                        ),
                    )
                }
                Err(e) => Check::new(
                    "fock_bound",
                    "analytic norm bound",
                    0.0,
                    TOL_EXACT,
                    format!("skipped: {e}"),
                ),
            });
        }
        _ => {}
    }

    let w1 = crate::operators::apply(&symbols, &TruncatedSeries::from_real(&[1.0, 1.0])?)?;
    if let Some(q) = space.quadrature_norm(&w1) {
        checks.push(match q.and_then(|q| Ok((q, norm(&w1, &weights)?))) {
            Ok((q, s)) => Check::new(
                "quadrature_norm",
                "integral norm",
                (q - s).abs() / s.max(f64::MIN_POSITIVE),
                TOL_QUADRATURE,
                format!("norm of W(1+z): quadrature {q:.12e}, series {s:.12e}"),
            ),
            Err(e) => Check::failed("quadrature_norm", "integral norm", TOL_QUADRATURE, &e),
        });
    }

    if matches!(space, SpaceSpec::BetaOmega) {
        let ne = norm_equivalence_check(&w1);
        checks.push(Check::new(
            "norm_equivalence",
            "comparison with the Hardy norm",
            if ne.ratio_ok { 0.0 } else { 1.0 },
            0.0,
            format!(
                "||f||_H2 = {:.6e} <= ||f|| = {:.6e} <= 2||f||_H2, so a bounded operator on H2 stays bounded here",
                ne.hardy, ne.beta_omega
            ),
        ));
    }

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        subject: Subject {
            space: space.clone(),
            params,
            order: n,
        },
        class,
        symbols,
        checks,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{binomial_series, exp_series};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sample_layout() {
        let s = default_ode_samples();
        assert_eq!(s.len(), 36);
        assert!(s.iter().all(|z| z.norm() <= 0.5 + 1e-15));
    }

    #[test]
    fn ode_family_solutions() {
        let s = default_ode_samples();
        for b in [0.5, 1.0, 2.0] {
            let k = exp_series(c(1.0 / (b * b), 0.0), 64);
            let r = ode_residual(&k, b, (2.0f64).sqrt() * b * b, &s).unwrap();
            assert!(r <= 1e-12, "b = {b}: {r}");
        }
        for (lambda, eta) in [(1.0, 1.0), (0.5, 2.0), (0.25, 0.5)] {
            let k = binomial_series(c(lambda, 0.0), c(eta, 0.0), 64);
            let b1 = (1.0 / (lambda * eta)).sqrt();
            let b2 = (2.0 / (lambda * lambda * eta * (eta + 1.0))).sqrt();
            let r = ode_residual(&k, b1, b2, &s).unwrap();
            assert!(r <= 1e-12, "({lambda}, {eta}): {r}");
        }
    }

    #[test]
    fn ode_dirichlet_fails() {
        let w = WeightSequence::dirichlet(64);
        let r = ode_residual(&w.generating_series(), w.beta(1), w.beta(2), &default_ode_samples())
            .unwrap();
        assert!(r > 1e-2);
    }

    #[test]
    fn ode_initial_conditions() {
        let k = exp_series(c(1.0, 0.0), 8);
        assert!(matches!(
            ode_residual(&k, 2.0, 1.0, &default_ode_samples()),
            Err(WcoError::Domain(_))
        ));
    }

    #[test]
    fn recovery_round_trip() {
        let cls = SpaceClass::binomial(0.5, 1.5).unwrap();
        let params = SymbolParams::new(c(0.3, -0.4), 0.2, -1.1);
        let sp = synthesize(&cls, params, 32).unwrap();
        let w = WeightSequence::from_class(&cls, 32).unwrap();
        let m = build_matrix(&sp, &w, 32).unwrap();
        let rec = recover_symbols(&m, &w).unwrap();
        assert!((rec.params.a0 - params.a0).norm() < 1e-12);
        assert!((rec.params.a1 - params.a1).norm() < 1e-12);
        assert!((rec.params.c - params.c).norm() < 1e-12);
        assert!(rec.phi_hat.max_abs_diff(&sp.phi) < 1e-12);
        assert!(rec.condition.is_none());
    }

    #[test]
    fn recovery_edge_cases() {
        let cls = SpaceClass::binomial(1.0, 1.0).unwrap();
        let w = WeightSequence::hardy(8);
        let sp = synthesize(&cls, SymbolParams::new(c(0.0, 0.0), 0.5, 2.0), 8).unwrap();
        let rec = recover_symbols(&build_matrix(&sp, &w, 8).unwrap(), &w).unwrap();
        assert_eq!(rec.params.a0, c(0.0, 0.0));
        assert_eq!(rec.psi_hat, TruncatedSeries::constant(c(2.0, 0.0), 8));

        let zero = synthesize(&cls, SymbolParams::new(c(0.3, 0.0), 0.5, 0.0), 8).unwrap();
        assert!(matches!(
            recover_symbols(&build_matrix(&zero, &w, 8).unwrap(), &w),
            Err(WcoError::Numeric(_))
        ));

        let tiny = synthesize(&cls, SymbolParams::new(c(0.3, 0.0), 1e-8, 1.0), 8).unwrap();
        let rec = recover_symbols(&build_matrix(&tiny, &w, 8).unwrap(), &w).unwrap();
        assert!(rec.condition.is_some());
    }

    #[test]
    fn norm_equivalence_examples() {
        let one = norm_equivalence_check(&TruncatedSeries::one(3));
        assert_eq!((one.hardy, one.beta_omega, one.ratio_ok), (1.0, 1.0, true));
        let z = norm_equivalence_check(&TruncatedSeries::identity(3));
        assert_eq!((z.hardy, z.beta_omega, z.ratio_ok), (1.0, 2.0, true));
    }

    proptest! {
        #[test]
        fn norm_equivalence_holds(
            coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 21),
        ) {
            let f = TruncatedSeries::new(
                coeffs.into_iter().map(|(a, b)| c(a, b)).collect(),
            ).unwrap();
            prop_assert!(norm_equivalence_check(&f).ratio_ok);
        }
    }

    #[test]
    fn space_spec_json() {
        let s: SpaceSpec = serde_json::from_str(r#"{"family":"Bergman","eta":2.0}"#).unwrap();
        assert_eq!(s, SpaceSpec::Bergman { eta: 2.0 });
        let w: SpaceSpec =
            serde_json::from_str(r#"{"family":"Weights","beta":[1.0,2.0,2.0]}"#).unwrap();
        assert_eq!(w.weights(2).unwrap().beta(1), 2.0);
        assert!(w.weights(3).is_err());
    }

    #[test]
    fn hardy_report_passes() {
        let r = full_report(&SpaceSpec::Hardy, SymbolParams::new(c(0.5, 0.0), 0.1, 1.0), 64)
            .unwrap();
        for ch in &r.checks {
            assert!(ch.pass, "{ch:?}");
        }
        assert!(r.check("quadrature_norm").is_some());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn beta_omega_report_fails() {
        let r = full_report(
            &SpaceSpec::BetaOmega,
            SymbolParams::new(c(0.5, 0.0), 0.1, 1.0),
            64,
        )
        .unwrap();
        assert!(matches!(
            r.class,
            SpaceClass::NotHospitable {
                reason: Rejection::LambdaExceedsOne,
                ..
            }
        ));
        assert!(!r.check("hermitian_deviation").unwrap().pass);
        assert!(!r.check("ode_residual").unwrap().pass);
        assert!(r.check("norm_equivalence").unwrap().pass);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn fock_report_passes() {
        let r = full_report(
            &SpaceSpec::Fock { b: 1.0 },
            SymbolParams::new(c(0.3, 0.0), 0.5, 2.0),
            64,
        )
        .unwrap();
        for ch in &r.checks {
            assert!(ch.pass, "{ch:?}");
        }
        assert!(r.check("fock_bound").is_some());
    }

    #[test]
    fn report_json() {
        let r = full_report(
            &SpaceSpec::Binomial {
                lambda: 0.5,
                eta: 2.0,
            },
            SymbolParams::new(c(0.4, 0.1), 0.2, 1.0),
            16,
        )
        .unwrap();
        assert!(r.all_pass, "{:?}", r.checks);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["subject"]["space"]["family"], "Binomial");
        assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"] == "dilation_conjugation"));
    }
}
