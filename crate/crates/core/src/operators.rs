//! Finite sections of `W_{ψ,φ} f = ψ·(f∘φ)` and the checks run on them.
//!
//! The matrix is taken in the normalized basis `e_j = z^j/β(j)`:
//! `M[i][j] = (β(i)/β(j))·[z^i](ψ·φ^j)`. Coefficient `i ≤ N` of `ψ·φ^j` only
//! reads `ψ̂(0..=N)` and `φ̂(0..=N)`, so every stored entry equals the entry
//! of the infinite matrix.

use std::io::Write;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Result, WcoError};
use crate::series::TruncatedSeries;
use crate::spaces::{kernel, norm, SpaceClass, WeightSequence};
use crate::symbols::{dilate, SymbolPair};

/// Largest `|w|` accepted by [`kernel_identity_residual`].
pub const MAX_KERNEL_POINT: f64 = 0.8;

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<Complex64>,
    beta: WeightSequence,
    exact: bool,
}

impl OperatorMatrix {
    pub fn order(&self) -> usize {
        self.entries.nrows() - 1
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn beta(&self) -> &WeightSequence {
        &self.beta
    }

    /// Whether every entry equals the entry of the infinite matrix.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Leading `(n+1)×(n+1)` block.
    pub fn section(&self, n: usize) -> Result<Self> {
        if n > self.order() {
            return Err(WcoError::usage(format!(
                "section {n} exceeds matrix order {}",
                self.order()
            )));
        }
        Ok(Self {
            entries: self.entries.view((0, 0), (n + 1, n + 1)).into_owned(),
            beta: self.beta.truncate(n)?,
            exact: self.exact,
        })
    }

    /// Row-major CSV, one `re,im` cell per entry.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut wr = csv::WriterBuilder::new().from_writer(out);
        for i in 0..=self.order() {
            let row: Vec<String> = (0..=self.order())
                .map(|j| {
                    let z = self.entries[(i, j)];
                    format!("{},{}", z.re, z.im)
                })
                .collect();
            wr.write_record(&row)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| WcoError::Numeric(e.to_string()))
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            order: usize,
            entries: Vec<Vec<[f64; 2]>>,
        }
        let n = self.order();
        Wire {
            order: n,
            entries: (0..=n)
                .map(|i| {
                    (0..=n)
                        .map(|j| {
                            let z = self.entries[(i, j)];
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

fn check_orders(sp: &SymbolPair, beta: &WeightSequence, n: usize) -> Result<()> {
    if n > sp.order() || n > beta.order() {
        return Err(WcoError::usage(format!(
            "order mismatch: requested {n}, symbols have {}, weights have {}",
            sp.order(),
            beta.order()
        )));
    }
    Ok(())
}

/// Column `j` holds the coefficients of `ψ·φ^j` rescaled by `β(i)/β(j)`.
///
/// The symbols need not come from the class of `beta`; that is how
/// non-hospitable spaces are probed.
pub fn build_matrix(sp: &SymbolPair, beta: &WeightSequence, n: usize) -> Result<OperatorMatrix> {
    check_orders(sp, beta, n)?;
    let beta = beta.truncate(n)?;
    let psi = sp.psi.with_order(n);
    let phi = sp.phi.with_order(n);
    let exact = psi.inexact_from().is_none() && phi.inexact_from().is_none();

    let mut entries = DMatrix::zeros(n + 1, n + 1);
    let mut col = psi;
    for j in 0..=n {
        let bj = beta.beta(j);
        for i in 0..=n {
            entries[(i, j)] = col.coeff(i) * (beta.beta(i) / bj);
        }
        if j < n {
            col = col.mul(&phi)?;
        }
    }
    Ok(OperatorMatrix {
        entries,
        beta,
        exact,
    })
}

/// Largest entry of `M − M*` and where it occurs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeviationReport {
    pub deviation: f64,
    pub argmax: [usize; 2],
    #[serde(rename = "N")]
    pub n: usize,
}

pub fn deviation_report(m: &OperatorMatrix) -> DeviationReport {
    let n = m.order();
    let mut best = DeviationReport {
        deviation: 0.0,
        argmax: [0, 0],
        n,
    };
    for i in 0..=n {
        for j in i..=n {
            let d = (m.entries[(i, j)] - m.entries[(j, i)].conj()).norm();
            if d > best.deviation {
                best.deviation = d;
                best.argmax = [i, j];
            }
        }
    }
    best
}

/// `max_{i,j} |M[i][j] − conj(M[j][i])|`.
pub fn hermitian_deviation(m: &OperatorMatrix) -> f64 {
    deviation_report(m).deviation
}

/// Residuals of `W*z^j = W z^j` for `j = 0, 1, 2` in the normalized basis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentResiduals {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
}

impl MomentResiduals {
    pub fn max(&self) -> f64 {
        self.m0.max(self.m1).max(self.m2)
    }
}

pub fn moment_conditions(m: &OperatorMatrix) -> MomentResiduals {
    let n = m.order();
    let column = |j: usize| -> f64 {
        if j > n {
            return 0.0;
        }
        (0..=n)
            .map(|i| (m.entries[(i, j)] - m.entries[(j, i)].conj()).norm())
            .fold(0.0, f64::max)
    };
    MomentResiduals {
        m0: column(0),
        m1: column(1),
        m2: column(2),
    }
}

/// `ψ·(f∘φ)` with `f` read as a polynomial, truncated at the symbols' order.
pub fn apply(sp: &SymbolPair, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.degree() > sp.order() {
        return Err(WcoError::usage(format!(
            "input of degree {} exceeds symbol order {}",
            f.degree(),
            sp.order()
        )));
    }
    sp.psi.mul(&f.with_order(sp.order()).compose_poly(&sp.phi)?)
}

/// `M` acting on the coefficient vector of `f` in the normalized basis.
pub fn apply_matrix(m: &OperatorMatrix, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let n = m.order();
    if f.degree() > n {
        return Err(WcoError::usage(format!(
            "input of degree {} exceeds matrix order {n}",
            f.degree()
        )));
    }
    let v = nalgebra::DVector::from_iterator(n + 1, (0..=n).map(|j| f.coeff(j) * m.beta.beta(j)));
    let u = &m.entries * v;
    TruncatedSeries::new((0..=n).map(|i| u[i] / m.beta.beta(i)).collect())
}

/// `W*K_w = conj(ψ(w))·K_{φ(w)}`, truncated at order `n`.
pub fn adjoint_on_kernel(
    sp: &SymbolPair,
    w: Complex64,
    beta: &WeightSequence,
    n: usize,
) -> Result<TruncatedSeries> {
    check_orders(sp, beta, n)?;
    if !(w.norm() < 1.0) {
        return Err(WcoError::domain(format!("need |w| < 1, got {}", w.norm())));
    }
    let phi_w = sp.phi.evaluate(w);
    if !(phi_w.norm() < 1.0) {
        return Err(WcoError::domain(format!(
            "need |phi(w)| < 1, got {}",
            phi_w.norm()
        )));
    }
    let psi_w = sp.psi.evaluate(w);
    Ok(kernel(phi_w, &beta.truncate(n)?)?.scale(psi_w.conj()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelIdentity {
    pub residual: f64,
    /// `(Σ_{j>N} |w|^{2j}/β(j)²)^{1/2}`, the norm of the dropped part of
    /// `K_w`, when the weights come from a family with known coefficients.
    pub tail_bound: Option<f64>,
}

/// `‖W K_w^{(N)} − conj(ψ(w))K_{φ(w)}‖` over coefficients `0..=N`, where
/// `K_w^{(N)}` is the kernel cut at order `N`.
pub fn kernel_identity_residual(
    sp: &SymbolPair,
    beta: &WeightSequence,
    w: Complex64,
    n: usize,
) -> Result<KernelIdentity> {
    if w.norm() > MAX_KERNEL_POINT {
        return Err(WcoError::domain(format!(
            "kernel identity needs |w| <= {MAX_KERNEL_POINT}, got {}",
            w.norm()
        )));
    }
    check_orders(sp, beta, n)?;
    let beta_n = beta.truncate(n)?;
    let pair = SymbolPair {
        psi: sp.psi.with_order(n),
        phi: sp.phi.with_order(n),
        ..sp.clone()
    };
    let lhs = apply(&pair, &kernel(w, &beta_n)?)?;
    let rhs = adjoint_on_kernel(&pair, w, &beta_n, n)?;
    let residual = norm(&lhs.sub(&rhs)?, &beta_n)?;

    let tail_bound = if beta.provenance() == crate::spaces::Provenance::FromFamily {
        kernel_tail(&sp.class, w.norm_sqr(), n)
    } else {
        None
    };
    Ok(KernelIdentity {
        residual,
        tail_bound,
    })
}

/// `(Σ_{j>N} x^j k̂(j))^{1/2}` for the generating coefficients of a family.
fn kernel_tail(class: &SpaceClass, x: f64, n: usize) -> Option<f64> {
    // ratio k̂(j+1)/k̂(j)
    let ratio: Box<dyn Fn(usize) -> f64> = match *class {
        SpaceClass::Exponential { b_sq, .. } => Box::new(move |j| 1.0 / (b_sq * (j as f64 + 1.0))),
        SpaceClass::Binomial { lambda, eta, .. } => {
            Box::new(move |j| lambda * (eta + j as f64) / (j as f64 + 1.0))
        }
        SpaceClass::NotHospitable { .. } => return None,
    };
    if x == 0.0 {
        return Some(0.0);
    }
    // log-space term to reach index N+1 without underflow
    let mut log_term = 0.0;
    for j in 0..=n {
        log_term += (x * ratio(j)).ln();
    }
    let mut sum = 0.0;
    let mut j = n + 1;
    loop {
        let term = log_term.exp();
        sum += term;
        let r = x * ratio(j);
        if r >= 1.0 && j > n + 100_000 {
            return Some(f64::INFINITY);
        }
        if r < 1.0 && term * r / (1.0 - r) <= 1e-17 * sum.max(f64::MIN_POSITIVE) {
            break;
        }
        if j > n + 1_000_000 {
            break;
        }
        log_term += r.ln();
        j += 1;
    }
    Some(sum.sqrt())
}

/// Deviation between `M_λ` on `H²_λ(β_η)` and the dilated `λ = 1` pair
/// conjugated back by `C_u`, `u(z) = √λ·z`.
///
/// In normalized bases `C_u` is the diagonal `D_jj = λ^{j/2}β_λ(j)/β̃(j)`;
/// the result is `max |D M̃ D⁻¹ − M_λ|`.
pub fn conjugation_check(sp: &SymbolPair, n: usize) -> Result<f64> {
    let (lambda, eta) = match sp.class {
        SpaceClass::Binomial { lambda, eta, .. } => (lambda, eta),
        _ => return Err(WcoError::usage("conjugation check needs a binomial pair")),
    };
    let beta_lambda = WeightSequence::from_class(&sp.class, n)?;
    let m_lambda = build_matrix(sp, &beta_lambda, n)?;
    let dilated = dilate(sp, n)?;
    let beta_one = WeightSequence::from_class(&SpaceClass::binomial(1.0, eta)?, n)?;
    let m_one = build_matrix(&dilated, &beta_one, n)?;

    let d: Vec<f64> = (0..=n)
        .map(|j| lambda.powf(j as f64 / 2.0) * beta_lambda.beta(j) / beta_one.beta(j))
        .collect();
    let mut worst: f64 = 0.0;
    for i in 0..=n {
        for j in 0..=n {
            let conj = m_one.entry(i, j) * (d[i] / d[j]);
            worst = worst.max((conj - m_lambda.entry(i, j)).norm());
        }
    }
    Ok(worst)
}

/// Upper bound on `‖W‖²` over the Fock-type space of an exponential pair:
/// `(|c|²/|a₁|²)·sup_z exp((2|a₀||z−a₀|/|a₁| + |z|² − |z−a₀|²/|a₁|²)/b²)`.
///
/// With `r = |z − a₀|` the exponent is largest when `z − a₀` points along
/// `a₀`, and the resulting quadratic in `r` peaks at `r = |a₀||a₁|/(1−|a₁|)`
/// with value `2|a₀|²/((1−|a₁|)b²)`.
pub fn fock_bound(sp: &SymbolPair) -> Result<f64> {
    let b_sq = match sp.class {
        SpaceClass::Exponential { b_sq, .. } => b_sq,
        _ => return Err(WcoError::usage("the Fock bound needs an exponential pair")),
    };
    let alpha = sp.params.a1.norm();
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(WcoError::domain(format!("need 0 < |a1| < 1, got {alpha}")));
    }
    let m = sp.params.a0.norm();
    let exponent = 2.0 * m * m / ((1.0 - alpha) * b_sq);
    Ok(sp.params.c.norm_sqr() / (alpha * alpha) * exponent.exp())
}

/// Largest singular value of the finite section.
pub fn spectral_norm(m: &OperatorMatrix) -> f64 {
    m.entries.singular_values().max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{synthesize, SymbolParams};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn hardy_pair(n: usize) -> SymbolPair {
        let cls = SpaceClass::binomial(1.0, 1.0).unwrap();
        synthesize(&cls, SymbolParams::new(c(0.5, 0.0), 0.1, 1.0), n).unwrap()
    }

    #[test]
    fn fixed_origin_is_diagonal() {
        let cls = SpaceClass::binomial(1.0, 2.0).unwrap();
        let sp = synthesize(&cls, SymbolParams::new(c(0.0, 0.0), 0.6, -1.5), 12).unwrap();
        let m = build_matrix(&sp, &WeightSequence::bergman(2.0, 12).unwrap(), 12).unwrap();
        for i in 0..=12 {
            for j in 0..=12 {
                let expected = if i == j { -1.5 * 0.6f64.powi(j as i32) } else { 0.0 };
                assert_abs_diff_eq!((m.entry(i, j) - expected).norm(), 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn rank_one_pair() {
        let cls = SpaceClass::binomial(1.0, 1.0).unwrap();
        let a0 = c(0.4, 0.3);
        let sp = synthesize(&cls, SymbolParams::new(a0, 0.0, 2.0), 10).unwrap();
        let m = build_matrix(&sp, &WeightSequence::hardy(10), 10).unwrap();
        // W e_j = c·a₀^j·K_{a₀}: every column is a multiple of (ā₀^i).
        for j in 0..=10 {
            for i in 0..=10 {
                let expected = 2.0 * a0.powu(j as u32) * a0.conj().powu(i as u32);
                assert!((m.entry(i, j) - expected).norm() < 1e-14);
            }
        }
        let sv = m.entries().singular_values();
        assert!(sv.iter().filter(|s| **s > 1e-12).count() == 1);
    }

    #[test]
    fn hardy_pair_is_hermitian() {
        let sp = hardy_pair(64);
        let m = build_matrix(&sp, &WeightSequence::hardy(64), 64).unwrap();
        assert!(m.is_exact());
        let r = deviation_report(&m);
        assert!(r.deviation <= 1e-12, "{r:?}");
        let mm = moment_conditions(&m);
        assert!(mm.max() <= 1e-12);
    }

    #[test]
    fn direct_convolution_oracle() {
        // ⟨W z^j, z^i⟩ from an explicit double sum over ψ̂ and (φ^j)^.
        let sp = hardy_pair(20);
        let m = build_matrix(&sp, &WeightSequence::hardy(20), 20).unwrap();
        let psi: Vec<f64> = (0..=20).map(|k| 0.5f64.powi(k)).collect();
        let phi: Vec<f64> = (0..=20)
            .map(|k| if k == 0 { 0.5 } else { 0.1 * 0.5f64.powi(k - 1) })
            .collect();
        let mut pw = vec![0.0; 21];
        pw[0] = 1.0;
        for j in 0..=20usize {
            for i in 0..=20usize {
                let v: f64 = (0..=i).map(|k| psi[k] * pw[i - k]).sum();
                assert_abs_diff_eq!(m.entry(i, j).re, v, epsilon = 1e-14);
            }
            let mut next = vec![0.0; 21];
            for (a, pa) in pw.iter().enumerate() {
                for (b, pb) in phi.iter().enumerate().take(21 - a) {
                    next[a + b] += pa * pb;
                }
            }
            pw = next;
        }
    }

    #[test]
    fn non_real_c_detected() {
        let cls = SpaceClass::binomial(1.0, 1.0).unwrap();
        let params = SymbolParams {
            c: c(0.0, 1.0),
            ..SymbolParams::new(c(0.5, 0.0), 0.1, 1.0)
        };
        let sp = synthesize(&cls, params, 16).unwrap();
        let m = build_matrix(&sp, &WeightSequence::hardy(16), 16).unwrap();
        let r = deviation_report(&m);
        assert!(r.deviation >= 2.0 - 1e-12);
        assert!((m.entry(0, 0) - m.entry(0, 0).conj()).norm() >= 2.0 - 1e-12);
    }

    #[test]
    fn perturbed_a1_breaks_first_moment() {
        let cls = SpaceClass::binomial(1.0, 1.0).unwrap();
        let params = SymbolParams {
            a1: c(0.1, 0.05),
            ..SymbolParams::new(c(0.5, 0.0), 0.0, 1.0)
        };
        let sp = synthesize(&cls, params, 16).unwrap();
        let m = build_matrix(&sp, &WeightSequence::hardy(16), 16).unwrap();
        assert!(moment_conditions(&m).m1 > 1e-3);
    }

    #[test]
    fn moments_are_first_columns_of_deviation() {
        let cls = SpaceClass::binomial(0.5, 2.0).unwrap();
        let params = SymbolParams {
            a1: c(0.2, 0.07),
            ..SymbolParams::new(c(0.3, -0.2), 0.0, 1.0)
        };
        let sp = synthesize(&cls, params, 20).unwrap();
        let m = build_matrix(&sp, &WeightSequence::from_class(&cls, 20).unwrap(), 20).unwrap();
        let mm = moment_conditions(&m);
        let full = hermitian_deviation(&m);
        assert!(mm.max() <= full);
        let col1 = (0..=20)
            .map(|i| (m.entry(i, 1) - m.entry(1, i).conj()).norm())
            .fold(0.0, f64::max);
        assert_eq!(mm.m1, col1);
    }

    #[test]
    fn entries_do_not_depend_on_truncation() {
        let cls = SpaceClass::binomial(0.75, 1.5).unwrap();
        let params = SymbolParams::new(c(0.2, 0.5), -0.3, 0.8);
        let small = synthesize(&cls, params, 24).unwrap();
        let big = synthesize(&cls, params, 48).unwrap();
        let w = WeightSequence::from_class(&cls, 48).unwrap();
        let ms = build_matrix(&small, &w, 24).unwrap();
        let mb = build_matrix(&big, &w, 48).unwrap().section(24).unwrap();
        assert_eq!(ms.entries(), mb.entries());
    }

    #[test]
    fn apply_agrees_with_matrix() {
        let sp = hardy_pair(12);
        let m = build_matrix(&sp, &WeightSequence::hardy(12), 12).unwrap();
        let f = TruncatedSeries::from_real(&[1.0, -2.0, 0.5, 0.0, 3.0]).unwrap();
        let a = apply(&sp, &f).unwrap();
        let b = apply_matrix(&m, &f.with_order(12)).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
        assert_eq!(apply(&sp, &TruncatedSeries::one(12)).unwrap(), sp.psi);
        let z = TruncatedSeries::identity(12);
        assert!(apply(&sp, &z).unwrap().max_abs_diff(&sp.psi.mul(&sp.phi).unwrap()) < 1e-15);
    }

    #[test]
    fn adjoint_at_origin() {
        let sp = hardy_pair(16);
        let beta = WeightSequence::hardy(16);
        let lhs = adjoint_on_kernel(&sp, c(0.0, 0.0), &beta, 16).unwrap();
        let rhs = kernel(c(0.5, 0.0), &beta).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        let r = kernel_identity_residual(&sp, &beta, c(0.0, 0.0), 16).unwrap();
        assert!(r.residual < 1e-15);
    }

    #[test]
    fn adjoint_fock_closed_form() {
        let cls = SpaceClass::exponential(1.5).unwrap();
        let (a0, a1, cc) = (c(0.3, 0.2), 0.4, 1.2);
        let sp = synthesize(&cls, SymbolParams::new(a0, a1, cc), 30).unwrap();
        let beta = WeightSequence::from_class(&cls, 30).unwrap();
        let w = c(0.25, -0.35);
        let got = adjoint_on_kernel(&sp, w, &beta, 30).unwrap();
        let pref = cc * (a0 * w.conj() / 1.5).exp();
        let expected = crate::series::exp_series((a0.conj() + a1 * w.conj()) / 1.5, 30).scale(pref);
        assert!(got.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn adjoint_binomial_closed_form() {
        let (lambda, eta) = (0.6, 1.8);
        let cls = SpaceClass::binomial(lambda, eta).unwrap();
        let (a0, a1, cc) = (c(0.3, 0.4), 0.2, 0.9);
        let sp = synthesize(&cls, SymbolParams::new(a0, a1, cc), 40).unwrap();
        let beta = WeightSequence::from_class(&cls, 40).unwrap();
        let w = c(0.3, 0.2);
        let got = adjoint_on_kernel(&sp, w, &beta, 40).unwrap();
        for z in [c(0.1, 0.0), c(-0.2, 0.3), c(0.0, -0.4)] {
            let base = 1.0 - lambda * a0.conj() * z - lambda * w.conj() * a0 * (1.0 - lambda * a0.conj() * z)
                - lambda * w.conj() * a1 * z;
            let expected = cc * base.powc(c(-eta, 0.0));
            assert!((got.evaluate(z) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn kernel_identity_and_tail() {
        let cls = SpaceClass::binomial(0.5, 2.0).unwrap();
        let sp = synthesize(&cls, SymbolParams::new(c(0.6, -0.3), 0.2, -0.7), 96).unwrap();
        let beta = WeightSequence::from_class(&cls, 96).unwrap();
        let r = kernel_identity_residual(&sp, &beta, c(0.3, 0.2), 96).unwrap();
        assert!(r.residual <= 1e-8, "{r:?}");
        let t = r.tail_bound.unwrap();
        assert!(t > 0.0 && t < 1e-30);
        assert!(kernel_identity_residual(&sp, &beta, c(0.81, 0.0), 96).is_err());
    }

    #[test]
    fn kernel_tail_matches_direct_sum() {
        let cls = SpaceClass::binomial(1.0, 1.0).unwrap();
        // Hardy: Σ_{j>N} x^j = x^{N+1}/(1−x)
        let x: f64 = 0.64;
        let t = kernel_tail(&cls, x, 10).unwrap();
        assert_abs_diff_eq!(t * t, x.powi(11) / (1.0 - x), epsilon = 1e-14);
    }

    #[test]
    fn kernel_identity_detects_complex_a1() {
        let cls = SpaceClass::binomial(1.0, 1.0).unwrap();
        let params = SymbolParams {
            a1: c(0.1, 0.05),
            ..SymbolParams::new(c(0.5, 0.0), 0.0, 1.0)
        };
        let sp = synthesize(&cls, params, 64).unwrap();
        let r = kernel_identity_residual(&sp, &WeightSequence::hardy(64), c(0.3, 0.2), 64).unwrap();
        assert!(r.residual > 1e-3);
    }

    #[test]
    fn conjugation() {
        let cls = SpaceClass::binomial(0.5, 1.0).unwrap();
        let sp = synthesize(&cls, SymbolParams::new(c(0.4, 0.0), 0.1, 1.0), 64).unwrap();
        assert!(conjugation_check(&sp, 64).unwrap() <= 1e-10);
        let one = SpaceClass::binomial(1.0, 1.0).unwrap();
        let sp1 = synthesize(&one, SymbolParams::new(c(0.4, 0.2), 0.1, 1.0), 32).unwrap();
        assert_eq!(conjugation_check(&sp1, 32).unwrap(), 0.0);
        let fock = synthesize(
            &SpaceClass::exponential(1.0).unwrap(),
            SymbolParams::new(c(0.4, 0.0), 0.1, 1.0),
            8,
        )
        .unwrap();
        assert!(matches!(conjugation_check(&fock, 8), Err(WcoError::Usage(_))));
    }

    #[test]
    fn fock_bound_examples() {
        let cls = SpaceClass::exponential(1.0).unwrap();
        let sp = synthesize(&cls, SymbolParams::new(c(0.0, 0.0), 0.5, 1.0), 8).unwrap();
        assert_abs_diff_eq!(fock_bound(&sp).unwrap(), 4.0, epsilon = 1e-15);
        let sp3 = synthesize(&cls, SymbolParams::new(c(0.2, 0.1), 0.5, 3.0), 8).unwrap();
        let sp1 = synthesize(&cls, SymbolParams::new(c(0.2, 0.1), 0.5, 1.0), 8).unwrap();
        assert_abs_diff_eq!(
            fock_bound(&sp3).unwrap(),
            9.0 * fock_bound(&sp1).unwrap(),
            epsilon = 1e-12
        );
        let bad = synthesize(&cls, SymbolParams::new(c(0.2, 0.0), 1.0, 1.0), 8).unwrap();
        assert!(matches!(fock_bound(&bad), Err(WcoError::Domain(_))));
    }

    #[test]
    fn fock_bound_matches_grid_supremum() {
        let cls = SpaceClass::exponential(0.8).unwrap();
        let (a0, a1) = (c(0.3, -0.4), 0.45f64);
        let sp = synthesize(&cls, SymbolParams::new(a0, a1, 1.0), 8).unwrap();
        let m = a0.norm();
        let mut best = f64::NEG_INFINITY;
        for ix in -300..=300 {
            for iy in -300..=300 {
                let z = c(ix as f64 * 0.01, iy as f64 * 0.01);
                let r = (z - a0).norm();
                let e = (2.0 * m * r / a1 + z.norm_sqr() - r * r / (a1 * a1)) / 0.8;
                best = best.max(e);
            }
        }
        let grid = best.exp() / (a1 * a1);
        let exact = fock_bound(&sp).unwrap();
        assert!(grid <= exact * (1.0 + 1e-12));
        assert!((grid - exact).abs() / exact < 1e-3);
    }

    #[test]
    fn exports() {
        let sp = hardy_pair(2);
        let m = build_matrix(&sp, &WeightSequence::hardy(2), 2).unwrap();
        let csv = m.to_csv_string().unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().next().unwrap().starts_with("\"1,0\","));
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["order"], 2);
        assert_eq!(v["entries"][0][0], serde_json::json!([1.0, 0.0]));
        let d = serde_json::to_value(deviation_report(&m)).unwrap();
        assert_eq!(d["N"], 2);
        assert!(d["argmax"].is_array());
    }
}
