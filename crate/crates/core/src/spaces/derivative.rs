use serde::{Deserialize, Serialize};

use crate::error::{Result, WcoError};
use crate::series::TruncatedSeries;

/// `β_η(j)² = j!/∏_{m<j}(η+m)`, the weights of `k(z) = (1 − z)^{−η}`.
pub fn binomial_weight_sq(eta: f64, order: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(order + 1);
    let mut w = 1.0;
    for j in 0..=order {
        out.push(w);
        w *= (j as f64 + 1.0) / (eta + j as f64);
    }
    out
}

/// Two-sided bound on `‖f′‖²` in `H²(β_{η+2})` for `0 < η < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeBounds {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
}

/// Computes `‖f′‖²_{H²(β_{η+2})}` from the series and sandwiches it between
/// `η(η+1)/2·T` and `(η+1)·T`, `T = Σ_{j≥1} |f̂(j)|² β_η(j)²`.
///
/// Fails with a numeric error if the sandwich does not hold.
pub fn derivative_norm_bounds(f: &TruncatedSeries, eta: f64) -> Result<DerivativeBounds> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(WcoError::domain(format!(
            "derivative bounds need 0 < eta < 1, got {eta}"
        )));
    }
    let n = f.order();
    let w_eta = binomial_weight_sq(eta, n);
    let w_eta2 = binomial_weight_sq(eta + 2.0, n);
    let mut value = 0.0;
    let mut tail = 0.0;
    for j in 1..=n {
        let a2 = f.coeff(j).norm_sqr();
        let jf = j as f64;
        value += jf * jf * a2 * w_eta2[j - 1];
        tail += a2 * w_eta[j];
    }
    let bounds = DerivativeBounds {
        lower: eta * (eta + 1.0) / 2.0 * tail,
        value,
        upper: (eta + 1.0) * tail,
    };
    let slack = 1e-12 * bounds.upper.max(f64::MIN_POSITIVE);
    if bounds.lower > value + slack || value > bounds.upper + slack {
        return Err(WcoError::Numeric(format!(
            "derivative norm {value} escapes [{}, {}]",
            bounds.lower, bounds.upper
        )));
    }
    Ok(bounds)
}
