use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::WeightSequence;
use crate::error::{Result, WcoError};
use crate::series::{binomial_series, exp_series, TruncatedSeries};

/// Relative tolerance for deciding `γ = 1` and the endpoints of `0 < λ ≤ 1`.
pub const TOL_CLASS: f64 = 1e-9;

/// Why a space cannot carry a nontrivial Hermitian weighted composition operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Rejection {
    LambdaNegative,
    LambdaExceedsOne,
    /// The weights agree with the candidate family through `β(2)` but not at
    /// `index`. `expected` is `1/β(index)²` from the supplied weights and
    /// `found` is the candidate's generating coefficient.
    CoefficientMismatch {
        index: usize,
        expected: f64,
        found: f64,
    },
}

/// Outcome of classifying a space from `β(1)` and `β(2)`.
///
/// `gamma` is `2β(1)⁴/β(2)²` in every variant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum SpaceClass {
    /// `k(z) = e^{z/b²}` with `b² = β(1)²`.
    Exponential { b_sq: f64, gamma: f64 },
    /// `k(z) = (1 − λz)^{−η}` with `η = 1/(λβ(1)²)`.
    Binomial { lambda: f64, eta: f64, gamma: f64 },
    NotHospitable {
        reason: Rejection,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        lambda: Option<f64>,
        gamma: f64,
    },
}

impl SpaceClass {
    pub fn exponential(b_sq: f64) -> Result<Self> {
        if !(b_sq.is_finite() && b_sq > 0.0) {
            return Err(WcoError::domain(format!("b² must be positive, got {b_sq}")));
        }
        Ok(SpaceClass::Exponential { b_sq, gamma: 1.0 })
    }

    pub fn binomial(lambda: f64, eta: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda <= 1.0 + TOL_CLASS) {
            return Err(WcoError::domain(format!(
                "binomial family needs 0 < lambda <= 1, got {lambda}"
            )));
        }
        if !(eta.is_finite() && eta > 0.0) {
            return Err(WcoError::domain(format!("eta must be positive, got {eta}")));
        }
        Ok(SpaceClass::Binomial {
            lambda: lambda.min(1.0),
            eta,
            gamma: (eta + 1.0) / eta,
        })
    }

    pub fn gamma(&self) -> f64 {
        match *self {
            SpaceClass::Exponential { gamma, .. }
            | SpaceClass::Binomial { gamma, .. }
            | SpaceClass::NotHospitable { gamma, .. } => gamma,
        }
    }

    pub fn is_hospitable(&self) -> bool {
        !matches!(self, SpaceClass::NotHospitable { .. })
    }

    /// `β(1)²` implied by the family parameters.
    pub fn beta1_sq(&self) -> Option<f64> {
        match *self {
            SpaceClass::Exponential { b_sq, .. } => Some(b_sq),
            SpaceClass::Binomial { lambda, eta, .. } => Some(1.0 / (lambda * eta)),
            SpaceClass::NotHospitable { .. } => None,
        }
    }

    /// Closed-form generating function `k` to the given order.
    pub fn generating_series(&self, order: usize) -> Result<TruncatedSeries> {
        match *self {
            SpaceClass::Exponential { b_sq, .. } => {
                Ok(exp_series(Complex64::new(1.0 / b_sq, 0.0), order))
            }
            SpaceClass::Binomial { lambda, eta, .. } => Ok(binomial_series(
                Complex64::new(lambda, 0.0),
                Complex64::new(eta, 0.0),
                order,
            )),
            SpaceClass::NotHospitable { .. } => Err(WcoError::usage(
                "a non-hospitable class has no closed-form generating function",
            )),
        }
    }
}

/// Classifies the space from its first two weights.
///
/// Computes `γ = 2β(1)⁴/β(2)²`. `|γ − 1| ≤ TOL_CLASS` gives the exponential
/// family; otherwise `λ = (γ − 1)/β(1)²` must lie in `(0, 1]`.
pub fn classify_space(beta1: f64, beta2: f64) -> Result<SpaceClass> {
    for (name, v) in [("beta1", beta1), ("beta2", beta2)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(WcoError::usage(format!("{name} must be positive, got {v}")));
        }
    }
    let b1_sq = beta1 * beta1;
    let gamma = 2.0 * b1_sq * b1_sq / (beta2 * beta2);
    if (gamma - 1.0).abs() <= TOL_CLASS {
        return Ok(SpaceClass::Exponential { b_sq: b1_sq, gamma });
    }
    let lambda = (gamma - 1.0) / b1_sq;
    if lambda > 0.0 && lambda <= TOL_CLASS {
        // The exponential family is the λ → 0 limit of the binomial one.
        return Ok(SpaceClass::Exponential { b_sq: b1_sq, gamma });
    }
    if lambda < 0.0 {
        return Ok(SpaceClass::NotHospitable {
            reason: Rejection::LambdaNegative,
            lambda: Some(lambda),
            gamma,
        });
    }
    if lambda > 1.0 + TOL_CLASS {
        return Ok(SpaceClass::NotHospitable {
            reason: Rejection::LambdaExceedsOne,
            lambda: Some(lambda),
            gamma,
        });
    }
    let lambda = lambda.min(1.0);
    Ok(SpaceClass::Binomial {
        lambda,
        eta: 1.0 / (lambda * b1_sq),
        gamma,
    })
}

/// Result of comparing a full weight sequence with a candidate family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CandidateCheck {
    Ok {
        max_rel_deviation: f64,
    },
    Mismatch {
        index: usize,
        expected: f64,
        found: f64,
    },
}

impl CandidateCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, CandidateCheck::Ok { .. })
    }
}

/// Compares `1/β(j)²` with the candidate's generating coefficients for every
/// `j ≤ N`, relative tolerance `tol` per coefficient.
pub fn verify_candidate(
    beta: &WeightSequence,
    class: &SpaceClass,
    tol: f64,
) -> Result<CandidateCheck> {
    if !class.is_hospitable() {
        return Err(WcoError::usage(
            "verify_candidate needs an Exponential or Binomial class",
        ));
    }
    let k = class.generating_series(beta.order())?;
    let mut max_rel: f64 = 0.0;
    for (j, (b, cand)) in beta.as_slice().iter().zip(k.coeffs()).enumerate() {
        let data = 1.0 / (b * b);
        let rel = (data - cand.re).abs() / data;
        if rel > tol {
            return Ok(CandidateCheck::Mismatch {
                index: j,
                expected: data,
                found: cand.re,
            });
        }
        max_rel = max_rel.max(rel);
    }
    Ok(CandidateCheck::Ok {
        max_rel_deviation: max_rel,
    })
}

/// Classifies from `β(1), β(2)` and then checks the full sequence.
pub fn classify_weights(beta: &WeightSequence, tol: f64) -> Result<SpaceClass> {
    let class = classify_space(beta.beta1()?, beta.beta2()?)?;
    if !class.is_hospitable() {
        return Ok(class);
    }
    match verify_candidate(beta, &class, tol)? {
        CandidateCheck::Ok { .. } => Ok(class),
        CandidateCheck::Mismatch {
            index,
            expected,
            found,
        } => Ok(SpaceClass::NotHospitable {
            reason: Rejection::CoefficientMismatch {
                index,
                expected,
                found,
            },
            lambda: match class {
                SpaceClass::Binomial { lambda, .. } => Some(lambda),
                _ => None,
            },
            gamma: class.gamma(),
        }),
    }
}
