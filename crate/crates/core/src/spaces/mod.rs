//! Weighted Hardy spaces `H²(β)`.
//!
//! A space is fixed by its weight sequence `β(j) = ‖z^j‖` with `β(0) = 1`.
//! Its generating function is `k(z) = Σ z^j/β(j)²` and the reproducing kernel
//! at `w` is `K_w(z) = k(w̄z)`.

mod classify;
mod derivative;
mod kernel;
mod quadrature;

pub use classify::{
    classify_space, classify_weights, verify_candidate, CandidateCheck, Rejection, SpaceClass,
    TOL_CLASS,
};
pub use derivative::{binomial_weight_sq, derivative_norm_bounds, DerivativeBounds};
pub use kernel::{inner_product, kernel, kernel_d, kernel_dd, norm};
pub use quadrature::{
    bergman_norm_quadrature, bergman_norm_quadrature_with, fock_norm_quadrature,
    fock_norm_quadrature_with, gauss_jacobi_unit, gauss_laguerre, hardy_norm_quadrature,
    hardy_norm_quadrature_with, GaussRule, QuadratureConfig,
};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, WcoError};
use crate::series::TruncatedSeries;

/// Where a weight sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    ExplicitList,
    FromGeneratingFunction,
    FromFamily,
}

/// `β(0..=N)`, normalized so that `β(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSequence {
    beta: Vec<f64>,
    provenance: Provenance,
}

/// Slack allowed on the `β(0) = 1` normalization for user-supplied data.
const NORMALIZATION_SLACK: f64 = 1e-12;

impl WeightSequence {
    /// Validates `β(0) = 1` and `β(j) > 0`.
    ///
    /// The growth condition `liminf β(j)^{1/j} ≥ 1` cannot be decided from
    /// finitely many weights and is not checked.
    pub fn explicit(beta: Vec<f64>) -> Result<Self> {
        Self::validated(beta, Provenance::ExplicitList)
    }

    fn validated(mut beta: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if beta.is_empty() {
            return Err(WcoError::usage("weight sequence is empty"));
        }
        if (beta[0] - 1.0).abs() > NORMALIZATION_SLACK {
            return Err(WcoError::domain(format!(
                "weight sequence must satisfy beta(0) = 1, got {}",
                beta[0]
            )));
        }
        beta[0] = 1.0;
        if let Some((j, b)) = beta
            .iter()
            .enumerate()
            .find(|(_, b)| !(b.is_finite() && **b > 0.0))
        {
            return Err(WcoError::domain(format!(
                "beta({j}) = {b} is not a positive finite number"
            )));
        }
        Ok(Self { beta, provenance })
    }

    /// Weights read off a generating function: `β(j) = k̂(j)^{-1/2}`.
    pub fn from_generating(k: &TruncatedSeries) -> Result<Self> {
        let mut beta = Vec::with_capacity(k.order() + 1);
        for (j, c) in k.coeffs().iter().enumerate() {
            if c.im.abs() > 1e-14 * c.re.abs().max(1e-300) || c.re <= 0.0 {
                return Err(WcoError::domain(format!(
                    "generating coefficient {j} = {c} is not strictly positive"
                )));
            }
            beta.push(c.re.sqrt().recip());
        }
        Self::validated(beta, Provenance::FromGeneratingFunction)
    }

    /// Weights of a hospitable family (`Exponential` or `Binomial`).
    pub fn from_class(class: &SpaceClass, order: usize) -> Result<Self> {
        let k = class.generating_series(order)?;
        let beta = k.coeffs().iter().map(|c| c.re.sqrt().recip()).collect();
        Self::validated(beta, Provenance::FromFamily)
    }

    /// Classical Hardy space, `β ≡ 1`.
    pub fn hardy(order: usize) -> Self {
        Self {
            beta: vec![1.0; order + 1],
            provenance: Provenance::FromFamily,
        }
    }

    /// `k(z) = (1 − z)^{−η}`; Bergman-type for `η > 1`.
    pub fn bergman(eta: f64, order: usize) -> Result<Self> {
        Self::from_class(&SpaceClass::binomial(1.0, eta)?, order)
    }

    /// Fock-type weights `β(j) = √(j!)·b^j`.
    pub fn fock(b: f64, order: usize) -> Result<Self> {
        Self::from_class(&SpaceClass::exponential(b * b)?, order)
    }

    /// Dirichlet space, `β(j)² = j + 1`.
    pub fn dirichlet(order: usize) -> Self {
        Self {
            beta: (0..=order).map(|j| ((j + 1) as f64).sqrt()).collect(),
            provenance: Provenance::ExplicitList,
        }
    }

    /// `β(0) = 1`, `β(j) = 2` for `j ≥ 1`.
    pub fn beta_omega(order: usize) -> Self {
        let mut beta = vec![2.0; order + 1];
        beta[0] = 1.0;
        Self {
            beta,
            provenance: Provenance::ExplicitList,
        }
    }

    pub fn order(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.beta
    }

    pub fn beta(&self, j: usize) -> f64 {
        self.beta[j]
    }

    pub fn beta1(&self) -> Result<f64> {
        self.beta
            .get(1)
            .copied()
            .ok_or_else(|| WcoError::usage("weight sequence has no beta(1)"))
    }

    pub fn beta2(&self) -> Result<f64> {
        self.beta
            .get(2)
            .copied()
            .ok_or_else(|| WcoError::usage("weight sequence has no beta(2)"))
    }

    /// `Σ z^j/β(j)²` truncated at this sequence's order.
    pub fn generating_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(
            self.beta
                .iter()
                .map(|b| Complex64::new((b * b).recip(), 0.0))
                .collect(),
        )
        .expect("weight sequence is nonempty")
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(WcoError::usage(format!(
                "cannot extend weights of order {} to order {order}",
                self.order()
            )));
        }
        Ok(Self {
            beta: self.beta[..=order].to_vec(),
            provenance: self.provenance,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct WeightsWire {
    order: usize,
    beta: Vec<f64>,
}

impl Serialize for WeightSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WeightsWire {
            order: self.order(),
            beta: self.beta.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WeightsWire::deserialize(deserializer)?;
        if wire.beta.len() != wire.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "order {} needs {} weights, got {}",
                wire.order,
                wire.order + 1,
                wire.beta.len()
            )));
        }
        WeightSequence::explicit(wire.beta).map_err(serde::de::Error::custom)
    }
}
