//! Candidate symbols `ψ(z) = c·k(ā₀z)` and
//! `φ(z) = a₀ + a₁β(1)²·z·k′(ā₀z)/k(ā₀z)`, their triviality class, and
//! the exact parameter region in which `φ` is a self-map of a disk.
//!
//! For the two hospitable families the formulas reduce to
//!
//! * exponential, `k(z) = e^{z/b²}`: `ψ(z) = c·e^{ā₀z/b²}`, `φ(z) = a₀ + a₁z`;
//! * binomial, `k(z) = (1 − λz)^{−η}`: `ψ(z) = c(1 − λā₀z)^{−η}`,
//!   `φ(z) = a₀ + a₁z/(1 − λā₀z)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Result, WcoError};
use crate::series::{binomial_series, exp_series, TruncatedSeries};
use crate::spaces::{classify_weights, SpaceClass, WeightSequence, TOL_CLASS};

/// Absolute slack on the closed self-map interval.
pub const INTERVAL_SLACK: f64 = 1e-12;

/// `(a₀, a₁, c) = (φ(0), φ′(0), ψ(0))`.
///
/// `a₁` and `c` are real for every Hermitian candidate; they are stored as
/// complex numbers so that perturbed, non-Hermitian pairs can be built too.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolParams {
    #[serde(with = "complex_pair")]
    pub a0: Complex64,
    #[serde(with = "real_or_pair")]
    pub a1: Complex64,
    #[serde(with = "real_or_pair")]
    pub c: Complex64,
}

impl SymbolParams {
    pub fn new(a0: Complex64, a1: f64, c: f64) -> Self {
        Self {
            a0,
            a1: Complex64::new(a1, 0.0),
            c: Complex64::new(c, 0.0),
        }
    }

    pub fn is_real(&self) -> bool {
        self.a1.im == 0.0 && self.c.im == 0.0
    }
}

/// The degenerate cases in which Hermitianness holds on every space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Triviality {
    Nontrivial,
    /// `c = 0`, so `ψ ≡ 0`.
    ZeroWeight,
    /// `a₀ = 0`: `ψ ≡ c` and `φ(z) = a₁z`, a diagonal operator.
    FixedOrigin,
    /// `a₁ = 0`: `W f = c⟨f, K_{a₀}⟩K_{a₀}`.
    RankOne,
}

pub fn triviality(params: &SymbolParams) -> Triviality {
    let zero = Complex64::new(0.0, 0.0);
    if params.c == zero {
        Triviality::ZeroWeight
    } else if params.a0 == zero {
        Triviality::FixedOrigin
    } else if params.a1 == zero {
        Triviality::RankOne
    } else {
        Triviality::Nontrivial
    }
}

/// Materialized symbols for one space.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolPair {
    pub params: SymbolParams,
    pub class: SpaceClass,
    pub psi: TruncatedSeries,
    pub phi: TruncatedSeries,
    pub trivial: Triviality,
}

impl SymbolPair {
    pub fn order(&self) -> usize {
        self.psi.order()
    }

    /// `φ(z)` from the closed form, for the hospitable families.
    pub fn phi_exact(&self, z: Complex64) -> Option<Complex64> {
        let SymbolParams { a0, a1, .. } = self.params;
        match self.class {
            SpaceClass::Exponential { .. } => Some(a0 + a1 * z),
            SpaceClass::Binomial { lambda, .. } => {
                Some(a0 + a1 * z / (1.0 - lambda * a0.conj() * z))
            }
            SpaceClass::NotHospitable { .. } => None,
        }
    }

    /// `ψ(z)` from the closed form, for the hospitable families.
    pub fn psi_exact(&self, z: Complex64) -> Option<Complex64> {
        let SymbolParams { a0, c, .. } = self.params;
        match self.class {
            SpaceClass::Exponential { b_sq, .. } => Some(c * (a0.conj() * z / b_sq).exp()),
            SpaceClass::Binomial { lambda, eta, .. } => {
                Some(c * (1.0 - lambda * a0.conj() * z).powc(Complex64::new(-eta, 0.0)))
            }
            SpaceClass::NotHospitable { .. } => None,
        }
    }
}

#[derive(Serialize)]
struct SymbolPairWire<'a> {
    #[serde(with = "complex_pair")]
    a0: Complex64,
    #[serde(with = "real_or_pair")]
    a1: Complex64,
    #[serde(with = "real_or_pair")]
    c: Complex64,
    class: &'a SpaceClass,
    trivial: Triviality,
    order: usize,
}

impl Serialize for SymbolPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SymbolPairWire {
            a0: self.params.a0,
            a1: self.params.a1,
            c: self.params.c,
            class: &self.class,
            trivial: self.trivial,
            order: self.order(),
        }
        .serialize(serializer)
    }
}

/// Builds `ψ` and `φ` for a hospitable class from the closed forms.
pub fn synthesize(class: &SpaceClass, params: SymbolParams, order: usize) -> Result<SymbolPair> {
    let SymbolParams { a0, a1, c } = params;
    let (psi, phi) = match *class {
        SpaceClass::Exponential { b_sq, .. } => {
            let psi = exp_series(a0.conj() / b_sq, order).scale(c);
            let mut phi = vec![Complex64::new(0.0, 0.0); order + 1];
            phi[0] = a0;
            if order >= 1 {
                phi[1] = a1;
            }
            (psi, TruncatedSeries::new(phi)?)
        }
        SpaceClass::Binomial { lambda, eta, .. } => {
            let ratio = lambda * a0.conj();
            let psi = binomial_series(ratio, Complex64::new(eta, 0.0), order).scale(c);
            let mut phi = Vec::with_capacity(order + 1);
            phi.push(a0);
            let mut p = a1;
            for _ in 1..=order {
                phi.push(p);
                p *= ratio;
            }
            (psi, TruncatedSeries::new(phi)?)
        }
        SpaceClass::NotHospitable { .. } => {
            return Err(WcoError::usage(
                "cannot synthesize Hermitian symbols for a non-hospitable class",
            ))
        }
    };
    Ok(SymbolPair {
        params,
        class: class.clone(),
        psi,
        phi,
        trivial: triviality(&params),
    })
}

/// Builds `ψ` and `φ` from the general formulas using the generating
/// function of an arbitrary weight sequence.
///
/// Unlike [`synthesize`] this accepts spaces that support no nontrivial
/// Hermitian operator; the resulting pair is what a Hermitian operator would
/// have to look like there. `class` records the classification of `weights`.
pub fn synthesize_from_weights(
    weights: &WeightSequence,
    params: SymbolParams,
    order: usize,
) -> Result<SymbolPair> {
    if order > weights.order() {
        return Err(WcoError::usage(format!(
            "order {order} exceeds the weight order {}",
            weights.order()
        )));
    }
    if order < 2 {
        return Err(WcoError::usage("need order >= 2 to read beta(1) and beta(2)"));
    }
    let weights = weights.truncate(order)?;
    let k = weights.generating_series();
    let SymbolParams { a0, a1, c } = params;
    let beta1_sq = weights.beta1()?.powi(2);

    let k_at = k.scale_argument(a0.conj());
    let psi = k_at.scale(c);
    let z_dk_at = k.derivative().scale_argument(a0.conj()).shift_up();
    let mut phi = z_dk_at.div(&k_at)?.scale(a1 * beta1_sq);
    let mut coeffs = phi.coeffs().to_vec();
    coeffs[0] += a0;
    phi = TruncatedSeries::new(coeffs)?;

    Ok(SymbolPair {
        params,
        class: classify_weights(&weights, 1e-10)?,
        psi,
        phi,
        trivial: triviality(&params),
    })
}

/// Real interval of `a₁` for which `φ(z) = a₀ + a₁z/(1 − ā₀λz)` maps `ρ𝔻`
/// into itself.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfMapInterval {
    pub a0_mod: f64,
    pub lambda: f64,
    pub rho: f64,
    pub a1_min: f64,
    pub a1_max: f64,
    pub admissible: bool,
}

impl SelfMapInterval {
    pub fn contains(&self, a1: f64) -> bool {
        self.admissible && a1 >= self.a1_min - INTERVAL_SLACK && a1 <= self.a1_max + INTERVAL_SLACK
    }

    /// `a₁` at fraction `t ∈ [−1, 1]` of the interval: `t·a1_max` for
    /// `t ≥ 0`, `|t|·a1_min` for `t < 0`.
    pub fn at_fraction(&self, t: f64) -> f64 {
        if t >= 0.0 {
            t * self.a1_max
        } else {
            -t * self.a1_min
        }
    }
}

fn interval_unchecked(a0_mod: f64, lambda: f64, rho: f64) -> SelfMapInterval {
    let m = a0_mod;
    SelfMapInterval {
        a0_mod: m,
        lambda,
        rho,
        a1_min: (1.0 + m * lambda * rho) * (m - rho) / rho,
        a1_max: (rho - m) * (1.0 - m * lambda * rho) / rho,
        admissible: m < rho,
    }
}

/// Exact self-map interval for `φ(z) = a₀ + a₁z/(1 − ā₀λz)` on `ρ𝔻`.
///
/// Requires `0 < λ ≤ 1`, `0 < ρ ≤ 1/√λ` and `ρ|a₀|λ < 1`. At `a₀ = 0` the
/// endpoints reduce to `[−1, 1]`: `φ(z) = a₁z` maps `ρ𝔻` into itself exactly
/// when `|a₁| ≤ 1`.
pub fn selfmap_interval(a0: Complex64, lambda: f64, rho: f64) -> Result<SelfMapInterval> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(WcoError::domain(format!(
            "need 0 < lambda <= 1, got {lambda}"
        )));
    }
    let rho_max = 1.0 / lambda.sqrt();
    if !(rho > 0.0 && rho <= rho_max * (1.0 + 1e-12)) {
        return Err(WcoError::domain(format!(
            "need 0 < rho <= 1/sqrt(lambda) = {rho_max}, got {rho}"
        )));
    }
    let m = a0.norm();
    if !(rho * m * lambda < 1.0) {
        return Err(WcoError::domain(format!(
            "need rho*|a0|*lambda < 1, got {}",
            rho * m * lambda
        )));
    }
    Ok(interval_unchecked(m, lambda, rho))
}

/// Whether `a₁` lies in the closed self-map interval.
pub fn is_selfmap(a0: Complex64, a1: f64, lambda: f64, rho: f64) -> Result<bool> {
    Ok(selfmap_interval(a0, lambda, rho)?.contains(a1))
}

/// The unit-disk self-map interval for a hospitable class. For the
/// exponential family `φ` is affine and the interval is `[|a₀|−1, 1−|a₀|]`.
pub fn unit_disk_interval(class: &SpaceClass, a0: Complex64) -> Result<SelfMapInterval> {
    match *class {
        SpaceClass::Binomial { lambda, .. } => selfmap_interval(a0, lambda, 1.0),
        SpaceClass::Exponential { .. } => Ok(interval_unchecked(a0.norm(), 0.0, 1.0)),
        SpaceClass::NotHospitable { .. } => Err(WcoError::usage(
            "no closed-form self-map interval for a non-hospitable class",
        )),
    }
}

/// A self-map of `𝔻` of this form also maps `(1/√λ)𝔻` into itself.
///
/// Returns the membership test on the larger disk; a `false` would
/// contradict that statement.
pub fn check_sqrt_lambda_lift(a0: Complex64, a1: f64, lambda: f64) -> Result<bool> {
    if !is_selfmap(a0, a1, lambda, 1.0)? {
        return Err(WcoError::domain(
            "parameters do not give a self-map of the unit disk",
        ));
    }
    is_selfmap(a0, a1, lambda, 1.0 / lambda.sqrt())
}

/// Conjugates a binomial pair on `H²_λ(β_η)` to the `λ = 1` pair on
/// `H²(β_η)`: `ã₀ = √λ·a₀` with the same `a₁` and `c`.
pub fn dilate(pair: &SymbolPair, order: usize) -> Result<SymbolPair> {
    match pair.class {
        SpaceClass::Binomial { lambda, eta, .. } => {
            if lambda > 1.0 + TOL_CLASS {
                return Err(WcoError::domain(format!("lambda {lambda} exceeds 1")));
            }
            let params = SymbolParams {
                a0: pair.params.a0 * lambda.sqrt(),
                ..pair.params
            };
            synthesize(&SpaceClass::binomial(1.0, eta)?, params, order)
        }
        _ => Err(WcoError::usage("dilation needs a binomial pair")),
    }
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// A real number as a bare float, anything else as `[re, im]`.
mod real_or_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Wire {
        Real(f64),
        Pair([f64; 2]),
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        if z.im == 0.0 {
            z.re.serialize(s)
        } else {
            [z.re, z.im].serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        Ok(match Wire::deserialize(d)? {
            Wire::Real(re) => Complex64::new(re, 0.0),
            Wire::Pair([re, im]) => Complex64::new(re, im),
        })
    }
}
