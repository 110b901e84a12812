//! Truncated power series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores the Maclaurin coefficients
//! `f̂(0), …, f̂(N)`. Products and powers are Cauchy products cut at `N`;
//! coefficient `j` of a product only reads input coefficients `0..=j`, so the
//! stored entries are exact whenever the inputs are.
//!
//! Differentiation loses one coefficient at the top. The result keeps its
//! order but records the first index that is no longer exact, see
//! [`TruncatedSeries::inexact_from`].

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, WcoError};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
    inexact_from: Option<usize>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(WcoError::usage("a series needs at least one coefficient"));
        }
        Ok(Self {
            coeffs,
            inexact_from: None,
        })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
            inexact_from: None,
        }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// `coef · z^power`, or the zero series when `power > order`.
    pub fn monomial(power: usize, coef: Complex64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        if power <= order {
            s.coeffs[power] = coef;
        }
        s
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(1, Complex64::new(1.0, 0.0), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    /// First coefficient index that is not exact, if any.
    pub fn inexact_from(&self) -> Option<usize> {
        self.inexact_from
    }

    /// Index of the last nonzero coefficient (0 for the zero series).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm_sqr() != 0.0)
            .unwrap_or(0)
    }

    fn check_order(&self, other: &Self, op: &str) -> Result<()> {
        if self.order() != other.order() {
            return Err(WcoError::usage(format!(
                "{op}: order mismatch ({} vs {})",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    fn merge_inexact(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other, "add")?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            inexact_from: Self::merge_inexact(self.inexact_from, other.inexact_from),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other, "sub")?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            inexact_from: Self::merge_inexact(self.inexact_from, other.inexact_from),
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            inexact_from: self.inexact_from,
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other, "mul")?;
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (o, b) in out[i..].iter_mut().zip(&other.coeffs) {
                *o += a * b;
            }
        }
        Ok(Self {
            coeffs: out,
            inexact_from: Self::merge_inexact(self.inexact_from, other.inexact_from),
        })
    }

    /// `f^j` by repeated multiplication, so `power(j) == power(j-1).mul(f)`
    /// holds bit for bit.
    pub fn power(&self, j: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..j {
            acc = acc.mul(self).expect("orders agree");
        }
        acc
    }

    /// `f'`; the top coefficient is set to zero and flagged inexact.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        for (j, c) in coeffs.iter_mut().take(n).enumerate() {
            *c = self.coeffs[j + 1] * (j as f64 + 1.0);
        }
        let shifted = self.inexact_from.map(|k| k.saturating_sub(1));
        Self {
            coeffs,
            inexact_from: Self::merge_inexact(Some(n), shifted),
        }
    }

    /// Horner evaluation of the truncation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `f ∘ g` with `f` read as an exact polynomial.
    ///
    /// When `f` is itself a truncation of a longer series the result carries
    /// the error of the dropped tail of `f`.
    pub fn compose_poly(&self, g: &Self) -> Result<Self> {
        self.check_order(g, "compose_poly")?;
        let mut acc = Self::zeros(g.order());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `f(s·z)`: coefficient `j` becomes `f̂(j)·s^j`.
    pub fn scale_argument(&self, s: Complex64) -> Self {
        let mut p = Complex64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * p;
                p *= s;
                v
            })
            .collect();
        Self {
            coeffs,
            inexact_from: self.inexact_from,
        }
    }

    /// `z·f`, truncated.
    pub fn shift_up(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[1..].copy_from_slice(&self.coeffs[..n]);
        Self {
            coeffs,
            inexact_from: self.inexact_from.map(|k| k + 1).filter(|&k| k <= n),
        }
    }

    /// `f / g`, requiring `ĝ(0) ≠ 0`.
    pub fn div(&self, g: &Self) -> Result<Self> {
        self.check_order(g, "div")?;
        let g0 = g.coeffs[0];
        if g0.norm() == 0.0 {
            return Err(WcoError::Numeric(
                "series division by a series vanishing at the origin".into(),
            ));
        }
        let n = self.coeffs.len();
        let mut q = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = self.coeffs[i];
            for k in 1..=i {
                acc -= g.coeffs[k] * q[i - k];
            }
            q[i] = acc / g0;
        }
        Ok(Self {
            coeffs: q,
            inexact_from: Self::merge_inexact(self.inexact_from, g.inexact_from),
        })
    }

    /// Keeps coefficients `0..=order` (padding with zeros when growing).
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self {
            coeffs,
            inexact_from: self.inexact_from.filter(|&k| k <= order),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|j| (self.coeff(j) - other.coeff(j)).norm())
            .fold(0.0, f64::max)
    }

    pub fn conj(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.conj()).collect(),
            inexact_from: self.inexact_from,
        }
    }
}

/// `e^{a z}` to order `N`: coefficients `a^j / j!`.
pub fn exp_series(a: Complex64, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Complex64::new(1.0, 0.0);
    for j in 0..=order {
        coeffs.push(c);
        c = c * a / (j as f64 + 1.0);
    }
    TruncatedSeries {
        coeffs,
        inexact_from: None,
    }
}

/// `(1 − λz)^{−η}` to order `N` via `c_{j+1} = c_j·λ(η+j)/(j+1)`.
pub fn binomial_series(lambda: Complex64, eta: Complex64, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Complex64::new(1.0, 0.0);
    for j in 0..=order {
        coeffs.push(c);
        let jf = j as f64;
        c = c * lambda * (eta + jf) / (jf + 1.0);
    }
    TruncatedSeries {
        coeffs,
        inexact_from: None,
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesWire {
            order: self.order(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = SeriesWire::deserialize(deserializer)?;
        if wire.coeffs.len() != wire.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                wire.order,
                wire.order + 1,
                wire.coeffs.len()
            )));
        }
        Ok(TruncatedSeries {
            coeffs: wire.coeffs,
            inexact_from: None,
        })
    }
}
