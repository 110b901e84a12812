//! Integral-side norms for the spaces that have one.
//!
//! All three norms are computed in polar form. The angular average of
//! `|f(re^{iθ})|²` uses uniform nodes, which is exact once the node count
//! exceeds the polynomial degree. The radial integral is a Gauss rule in
//! `s = r²` (Fock: weight `e^{−s}` after scaling by `b²`; Bergman: weight
//! `(1−s)^{η−2}` on `[0, 1]`), exact for polynomials of degree `2n − 1`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, WcoError};
use crate::series::TruncatedSeries;

/// Nodes and weights of a one-dimensional Gauss rule.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| if w == 0.0 { 0.0 } else { w * f(x) })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureConfig {
    pub radial: usize,
    pub angular: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            radial: 200,
            angular: 512,
        }
    }
}

/// Laguerre polynomials `L_{n−1}, L_n, L_{n+1}` at `x`, all divided by
/// `e^{log_scale}` to stay finite for large `x`.
fn laguerre_scaled(n: usize, x: f64) -> (f64, f64, f64, f64) {
    const BIG: f64 = 1e150;
    let mut log_scale = 0.0;
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    let mut prevprev = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prevprev = prev;
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            prevprev /= BIG;
            prev /= BIG;
            cur /= BIG;
            log_scale += BIG.ln();
        }
    }
    if n == 0 {
        // L_{−1} is never used for n = 0.
        return (0.0, 1.0, 1.0 - x, 0.0);
    }
    (prevprev, prev, cur, log_scale)
}

/// Gauss–Laguerre rule for `∫_0^∞ g(x) e^{−x} dx`.
///
/// Nodes start from the eigenvalues of the Jacobi matrix and are polished by
/// Newton's method; weights come from `x/((n+1)² L_{n+1}(x)²)` evaluated in
/// log space so that the tiny weights of far nodes underflow cleanly.
pub fn gauss_laguerre(n: usize) -> GaussRule {
    assert!(n > 0, "a Gauss rule needs at least one node");
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jacobi[(k, k)] = 2.0 * k as f64 + 1.0;
        if k + 1 < n {
            jacobi[(k, k + 1)] = (k + 1) as f64;
            jacobi[(k + 1, k)] = (k + 1) as f64;
        }
    }
    let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(f64::total_cmp);

    let nf = n as f64;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..8 {
            let (lm1, ln, _, _) = laguerre_scaled(n, *x);
            let step = *x * ln / (nf * (ln - lm1));
            *x -= step;
            if step.abs() <= 1e-15 * x.abs() {
                break;
            }
        }
        let (_, _, lp1, log_scale) = laguerre_scaled(n, *x);
        let log_w = x.ln() - 2.0 * (nf + 1.0).ln() - 2.0 * (lp1.abs().ln() + log_scale);
        weights.push(log_w.exp());
    }
    GaussRule { nodes, weights }
}

/// Gauss rule on `[0, 1]` for the probability measure proportional to
/// `(1 − t)^alpha dt`, `alpha > −1` (Golub–Welsch on the Jacobi recurrence).
pub fn gauss_jacobi_unit(n: usize, alpha: f64) -> GaussRule {
    assert!(n > 0, "a Gauss rule needs at least one node");
    assert!(alpha > -1.0, "Jacobi exponent must exceed -1");
    let a = alpha;
    let b = 0.0f64;
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        jacobi[(k, k)] = if k == 0 {
            (b - a) / (a + b + 2.0)
        } else {
            (b * b - a * a) / (s * (s + 2.0))
        };
        if k + 1 < n {
            let m = kf + 1.0;
            let s = 2.0 * m + a + b;
            let off = 2.0 / s
                * (m * (m + a) * (m + b) * (m + a + b) / ((s - 1.0) * (s + 1.0))).sqrt();
            jacobi[(k, k + 1)] = off;
            jacobi[(k + 1, k)] = off;
        }
    }
    let eig = jacobi.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            ((1.0 + eig.eigenvalues[i]) / 2.0, v0 * v0)
        })
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1 / total).collect(),
    }
}

fn unit_roots(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
        .collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn angular_mean_sq(coeffs: &[Complex64], r: f64, roots: &[Complex64]) -> f64 {
    roots
        .iter()
        .map(|u| horner(coeffs, u * r).norm_sqr())
        .sum::<f64>()
        / roots.len() as f64
}

fn check_nodes(f: &TruncatedSeries, radial: Option<usize>, cfg: &QuadratureConfig) -> Result<()> {
    let degree = f.degree();
    let radial_ok = radial.is_none_or(|n| n > 0 && 2 * n > degree);
    if !radial_ok || cfg.angular <= degree {
        return Err(WcoError::Quadrature {
            message: "node counts too small to integrate this polynomial exactly".into(),
            radial: radial.unwrap_or(0),
            angular: cfg.angular,
            degree,
        });
    }
    Ok(())
}

/// `‖f‖_F` with `‖f‖²_F = (1/(πb²)) ∫_ℂ |f|² e^{−|z|²/b²} dA`.
pub fn fock_norm_quadrature(f: &TruncatedSeries, b_sq: f64) -> Result<f64> {
    fock_norm_quadrature_with(f, b_sq, &QuadratureConfig::default())
}

pub fn fock_norm_quadrature_with(
    f: &TruncatedSeries,
    b_sq: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(b_sq.is_finite() && b_sq > 0.0) {
        return Err(WcoError::domain(format!("b² must be positive, got {b_sq}")));
    }
    check_nodes(f, Some(cfg.radial), cfg)?;
    let coeffs = &f.coeffs()[..=f.degree()];
    let rule = gauss_laguerre(cfg.radial);
    let roots = unit_roots(cfg.angular);
    let b = b_sq.sqrt();
    let sq = rule.integrate(|s| angular_mean_sq(coeffs, b * s.sqrt(), &roots));
    Ok(sq.max(0.0).sqrt())
}

/// `‖f‖` with `‖f‖² = ∫_𝔻 |f|²(η−1)(1−|z|²)^{η−2} dA/π`, `η > 1`.
pub fn bergman_norm_quadrature(f: &TruncatedSeries, eta: f64) -> Result<f64> {
    bergman_norm_quadrature_with(f, eta, &QuadratureConfig::default())
}

pub fn bergman_norm_quadrature_with(
    f: &TruncatedSeries,
    eta: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(eta.is_finite() && eta > 1.0) {
        return Err(WcoError::domain(format!(
            "the area-integral norm needs eta > 1, got {eta}"
        )));
    }
    check_nodes(f, Some(cfg.radial), cfg)?;
    let coeffs = &f.coeffs()[..=f.degree()];
    let rule = gauss_jacobi_unit(cfg.radial, eta - 2.0);
    let roots = unit_roots(cfg.angular);
    let sq = rule.integrate(|t| angular_mean_sq(coeffs, t.sqrt(), &roots));
    Ok(sq.max(0.0).sqrt())
}

/// `‖f‖_{H²}` with `‖f‖² = (1/2π) ∫ |f(e^{it})|² dt` (trapezoid rule).
pub fn hardy_norm_quadrature(f: &TruncatedSeries) -> Result<f64> {
    hardy_norm_quadrature_with(f, &QuadratureConfig::default())
}

pub fn hardy_norm_quadrature_with(f: &TruncatedSeries, cfg: &QuadratureConfig) -> Result<f64> {
    check_nodes(f, None, cfg)?;
    let coeffs = &f.coeffs()[..=f.degree()];
    Ok(angular_mean_sq(coeffs, 1.0, &unit_roots(cfg.angular))
        .max(0.0)
        .sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn monomial(j: usize, order: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(j, Complex64::new(1.0, 0.0), order)
    }

    #[test]
    fn laguerre_moments() {
        let rule = gauss_laguerre(40);
        let mut fact = 1.0;
        for k in 0..60 {
            if k > 0 {
                fact *= k as f64;
            }
            let got = rule.integrate(|x| x.powi(k));
            assert_relative_eq!(got, fact, max_relative = 1e-11);
        }
    }

    #[test]
    fn laguerre_large_rule_is_finite() {
        let rule = gauss_laguerre(200);
        assert!(rule.weights.iter().all(|w| w.is_finite() && *w >= 0.0));
        assert_relative_eq!(rule.weights.iter().sum::<f64>(), 1.0, max_relative = 1e-11);
        let fact20: f64 = (1..=20).map(|k| k as f64).product();
        assert_relative_eq!(rule.integrate(|x| x.powi(20)), fact20, max_relative = 1e-11);
    }

    #[test]
    fn jacobi_moments() {
        // ∫_0^1 t^j (η−1)(1−t)^{η−2} dt = j!/∏_{m<j}(η+m)
        for &eta in &[1.3, 2.0, 3.0, 5.5] {
            let rule = gauss_jacobi_unit(30, eta - 2.0);
            for j in 0..40 {
                let mut expected = 1.0;
                for m in 0..j {
                    expected *= (m + 1) as f64 / (eta + m as f64);
                }
                assert_relative_eq!(
                    rule.integrate(|t| t.powi(j)),
                    expected,
                    max_relative = 1e-11
                );
            }
        }
    }

    #[test]
    fn fock_monomials() {
        let f = TruncatedSeries::one(4);
        assert_relative_eq!(fock_norm_quadrature(&f, 1.0).unwrap(), 1.0, max_relative = 1e-12);
        let b_sq = 0.8;
        let mut fact = 1.0;
        for j in 0..=12usize {
            if j > 0 {
                fact *= j as f64;
            }
            let n = fock_norm_quadrature(&monomial(j, 12), b_sq).unwrap();
            assert_relative_eq!(n * n, b_sq.powi(j as i32) * fact, max_relative = 1e-6);
        }
        let one_plus_z = TruncatedSeries::from_real(&[1.0, 1.0]).unwrap();
        let n = fock_norm_quadrature(&one_plus_z, 1.0).unwrap();
        assert_relative_eq!(n * n, 2.0, max_relative = 1e-6);
    }

    #[test]
    fn bergman_monomials() {
        for j in 0..10usize {
            let n = bergman_norm_quadrature(&monomial(j, 10), 2.0).unwrap();
            assert_relative_eq!(n * n, 1.0 / (j as f64 + 1.0), max_relative = 1e-8);
        }
        let f = TruncatedSeries::from_real(&[1.0, 1.0]).unwrap();
        let n = bergman_norm_quadrature(&f, 3.0).unwrap();
        assert_relative_eq!(n * n, 4.0 / 3.0, max_relative = 1e-8);
    }

    #[test]
    fn hardy_monomials() {
        for j in 0..20 {
            let n = hardy_norm_quadrature(&monomial(j, 20)).unwrap();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_degenerate_bergman_and_small_rules() {
        let f = TruncatedSeries::one(2);
        assert!(matches!(bergman_norm_quadrature(&f, 1.0), Err(WcoError::Domain(_))));
        assert!(bergman_norm_quadrature(&f, 0.5).is_err());
        let cfg = QuadratureConfig {
            radial: 2,
            angular: 3,
        };
        match fock_norm_quadrature_with(&monomial(5, 5), 1.0, &cfg) {
            Err(WcoError::Quadrature {
                radial,
                angular,
                degree,
                ..
            }) => assert_eq!((radial, angular, degree), (2, 3, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(hardy_norm_quadrature_with(&monomial(3, 3), &cfg).is_err());
    }
}
