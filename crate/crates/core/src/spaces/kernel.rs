use num_complex::Complex64;

use super::WeightSequence;
use crate::error::{Result, WcoError};
use crate::series::TruncatedSeries;

fn check_disk(w: Complex64) -> Result<()> {
    if !(w.norm() < 1.0) {
        return Err(WcoError::domain(format!(
            "kernel point must lie in the open unit disk, |w| = {}",
            w.norm()
        )));
    }
    Ok(())
}

/// Builds `Σ_j m(j)·w̄^{j−shift}/β(j)² z^j` for `j ≥ shift`.
fn kernel_with(
    w: Complex64,
    beta: &WeightSequence,
    shift: usize,
    multiplier: impl Fn(usize) -> f64,
) -> Result<TruncatedSeries> {
    check_disk(w)?;
    let wb = w.conj();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); beta.order() + 1];
    let mut p = Complex64::new(1.0, 0.0);
    for (j, c) in coeffs.iter_mut().enumerate().skip(shift) {
        let b = beta.beta(j);
        *c = p * multiplier(j) / (b * b);
        p *= wb;
    }
    TruncatedSeries::new(coeffs)
}

/// `K_w(z) = k(w̄z)`: coefficients `w̄^j/β(j)²`.
pub fn kernel(w: Complex64, beta: &WeightSequence) -> Result<TruncatedSeries> {
    kernel_with(w, beta, 0, |_| 1.0)
}

/// `K^D_w(z) = z·k′(w̄z)`, reproducing `f′(w)`.
pub fn kernel_d(w: Complex64, beta: &WeightSequence) -> Result<TruncatedSeries> {
    kernel_with(w, beta, 1, |j| j as f64)
}

/// `K^{DD}_w(z) = z²·k″(w̄z)`, reproducing `f″(w)`.
pub fn kernel_dd(w: Complex64, beta: &WeightSequence) -> Result<TruncatedSeries> {
    kernel_with(w, beta, 2, |j| (j * (j - 1)) as f64)
}

/// `⟨f, g⟩ = Σ f̂(j)·conj(ĝ(j))·β(j)²`.
pub fn inner_product(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    beta: &WeightSequence,
) -> Result<Complex64> {
    if f.order() != g.order() {
        return Err(WcoError::usage(format!(
            "inner product: order mismatch ({} vs {})",
            f.order(),
            g.order()
        )));
    }
    if f.order() > beta.order() {
        return Err(WcoError::usage(format!(
            "inner product: series order {} exceeds weight order {}",
            f.order(),
            beta.order()
        )));
    }
    Ok(f.coeffs()
        .iter()
        .zip(g.coeffs())
        .zip(beta.as_slice())
        .map(|((a, b), w)| a * b.conj() * (w * w))
        .sum())
}

pub fn norm(f: &TruncatedSeries, beta: &WeightSequence) -> Result<f64> {
    Ok(inner_product(f, f, beta)?.re.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_at_origin_is_one() {
        for beta in [
            WeightSequence::hardy(6),
            WeightSequence::dirichlet(6),
            WeightSequence::fock(0.7, 6).unwrap(),
        ] {
            assert_eq!(kernel(c(0.0, 0.0), &beta).unwrap(), TruncatedSeries::one(6));
        }
    }

    #[test]
    fn reproduces_monomial() {
        let beta = WeightSequence::hardy(5);
        let w = c(0.3, -0.6);
        let z2 = TruncatedSeries::monomial(2, c(1.0, 0.0), 5);
        let v = inner_product(&z2, &kernel(w, &beta).unwrap(), &beta).unwrap();
        assert_abs_diff_eq!((v - w * w).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn derivative_kernel_reproduces_derivative() {
        let beta = WeightSequence::hardy(2);
        let f = TruncatedSeries::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let w = c(0.3, 0.0);
        let v = inner_product(&f, &kernel_d(w, &beta).unwrap(), &beta).unwrap();
        // f′(z) = 2 + 6z
        assert_abs_diff_eq!(v.re, 2.0 + 6.0 * 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn monomials_are_orthogonal() {
        let beta = WeightSequence::dirichlet(4);
        for i in 0..=4 {
            for j in 0..=4 {
                let zi = TruncatedSeries::monomial(i, c(1.0, 0.0), 4);
                let zj = TruncatedSeries::monomial(j, c(1.0, 0.0), 4);
                let v = inner_product(&zi, &zj, &beta).unwrap();
                let expected = if i == j { beta.beta(j).powi(2) } else { 0.0 };
                assert_abs_diff_eq!(v.re, expected, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn hardy_kernel_norm() {
        let beta = WeightSequence::hardy(200);
        let w = c(0.5, 0.4);
        let k = kernel(w, &beta).unwrap();
        let n2 = norm(&k, &beta).unwrap().powi(2);
        assert_abs_diff_eq!(n2, 1.0 / (1.0 - w.norm_sqr()), epsilon = 1e-12);
    }

    #[test]
    fn kernel_outside_disk() {
        let beta = WeightSequence::hardy(3);
        assert!(matches!(kernel(c(1.0, 0.0), &beta), Err(WcoError::Domain(_))));
        assert!(kernel_dd(c(0.0, -1.5), &beta).is_err());
    }

    #[test]
    fn order_checks() {
        let beta = WeightSequence::hardy(2);
        let f = TruncatedSeries::one(3);
        assert!(inner_product(&f, &f, &beta).is_err());
        assert!(inner_product(&f, &TruncatedSeries::one(2), &beta).is_err());
    }
}
