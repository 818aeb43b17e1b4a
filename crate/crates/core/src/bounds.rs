//! Lower bounds on `σ(A)` from walk weights, plus Schur's upper bound.
//!
//! Every bound is reported next to `σ` from [`crate::spectral::sigma`] so
//! equality cases show up as a vanishing gap.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::spectral;
use crate::walks::walk_table;

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    /// `(w^p(R) / w^r(R))^{1/(p-r)}` for odd `p > r`.
    WalkBound,
    /// Rayleigh quotient at the `|A|` walk-weight vectors.
    WeightedBound,
    /// `|Σ(A)| / √(mn)`.
    MeanBound,
    /// Hoffman–Wolfe–Hofmeister bound for nonnegative symmetric matrices.
    HwhBound,
    /// `√(max r_i c_j)`, an upper bound.
    SchurUpper,
}

impl BoundMethod {
    pub fn is_upper(self) -> bool {
        matches!(self, BoundMethod::SchurUpper)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
}

/// Support condition `d_i d_j = μ²` on every nonzero entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportCertificate {
    pub holds: bool,
    /// Largest `|d_i d_j − μ²|` over the support.
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub method: BoundMethod,
    pub value: f64,
    pub sigma: f64,
    /// `σ − value` for lower bounds, `value − σ` for the upper bound.
    pub gap: f64,
    pub tight: bool,
    pub tol: f64,
    pub params: BoundParams,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub support_certificate: Option<SupportCertificate>,
}

impl BoundReport {
    fn new(method: BoundMethod, value: f64, sigma: f64, tol: f64, params: BoundParams) -> Self {
        let gap = if method.is_upper() { value - sigma } else { sigma - value };
        BoundReport {
            method,
            value,
            sigma,
            gap,
            tight: gap.abs() <= tol * sigma.max(1.0),
            tol,
            params,
            support_certificate: None,
        }
    }

    /// Whether the bound points the right way within `tol * max(1, σ)`.
    pub fn is_valid(&self) -> bool {
        self.gap >= -self.tol * self.sigma.max(1.0)
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::precondition("tolerance must be positive and finite"))
    }
}

/// The walk-ratio formula `(w^p(R) / w^r(R))^{1/(p-r)}` with no parity or
/// scalarity checks; `0` when `w^r(R) <= 0`.
///
/// Exposed so the failure of the inequality at even orders can be exhibited.
pub fn walk_ratio_value(a: &DenseMatrix, p: usize, r: usize) -> Result<f64> {
    if !(p > r && r >= 1) {
        return Err(Error::precondition(format!("need p > r >= 1, got p={p}, r={r}")));
    }
    if !a.is_real() {
        return Err(Error::precondition("walk ratio is evaluated on a real matrix"));
    }
    let t = walk_table(a, p)?;
    let num = t.row_total(p).re;
    let den = t.row_total(r).re;
    if !(den > 0.0) || num < 0.0 {
        return Ok(0.0);
    }
    Ok((num / den).powf(1.0 / (p - r) as f64))
}

/// Walk bound for odd `p > r >= 1` on a scalar matrix, evaluated on its
/// nonnegative part.
pub fn walk_bound(a: &DenseMatrix, p: usize, r: usize, tol: f64) -> Result<BoundReport> {
    check_tol(tol)?;
    if p.is_multiple_of(2) || r.is_multiple_of(2) {
        return Err(Error::precondition(format!(
            "walk bound needs odd p and r (got p={p}, r={r}); with an even order the inequality may fail"
        )));
    }
    if !(p > r && r >= 1) {
        return Err(Error::precondition(format!("need p > r >= 1, got p={p}, r={r}")));
    }
    let scalarity = a.detect_scalar(tol);
    let nonneg = scalarity.require()?;
    let value = walk_ratio_value(nonneg, p, r)?;
    let sigma = spectral::sigma(a)?.value;
    debug_assert!(
        (spectral::sigma(nonneg)?.value - sigma).abs() <= 1e-8 * sigma.max(1.0),
        "σ changed under phase removal"
    );
    Ok(BoundReport::new(
        BoundMethod::WalkBound,
        value,
        sigma,
        tol,
        BoundParams { p: Some(p), r: Some(r), s: None },
    ))
}

/// `|Σ a_ij √(w(i) w(j))| / √(w(R) w(C))` with weights of order `r` taken
/// on `|A|`. Valid for any complex matrix.
pub fn weighted_bound(a: &DenseMatrix, r: usize, tol: f64) -> Result<BoundReport> {
    check_tol(tol)?;
    if r == 0 {
        return Err(Error::precondition("r must be at least 1"));
    }
    let value = weighted_value(a, r)?;
    let sigma = spectral::sigma(a)?.value;
    Ok(BoundReport::new(
        BoundMethod::WeightedBound,
        value,
        sigma,
        tol,
        BoundParams { p: None, r: Some(r), s: None },
    ))
}

pub(crate) fn weighted_value(a: &DenseMatrix, r: usize) -> Result<f64> {
    let t = walk_table(&a.entrywise_abs(), r)?;
    let den = (t.row_total(r).re * t.col_total(r).re).sqrt();
    if !(den > 0.0) {
        return Ok(0.0);
    }
    let rows = t.rows_re(r);
    let cols = t.cols_re(r);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, wi) in rows.iter().enumerate() {
        for (aij, wj) in a.row(i).iter().zip(&cols) {
            acc += aij * (wi * wj).sqrt();
        }
    }
    Ok(acc.norm() / den)
}

/// `|Σ(A)| / √(nm)`.
pub fn mean_bound(a: &DenseMatrix, tol: f64) -> Result<BoundReport> {
    check_tol(tol)?;
    let value = a.total_sum().norm() / ((a.rows() * a.cols()) as f64).sqrt();
    let sigma = spectral::sigma(a)?.value;
    Ok(BoundReport::new(BoundMethod::MeanBound, value, sigma, tol, BoundParams::default()))
}

/// Row sums of a nonnegative symmetric matrix with positive row sums.
fn hwh_degrees(a: &DenseMatrix) -> Result<Vec<f64>> {
    if !a.is_square() || !a.is_real() || !a.is_hermitian(1e-10) {
        return Err(Error::precondition("HWH bound needs a real symmetric matrix"));
    }
    if !a.is_nonnegative() {
        return Err(Error::precondition("HWH bound needs a nonnegative matrix"));
    }
    let d: Vec<f64> = a.row_sums().iter().map(|z| z.re).collect();
    if let Some(i) = d.iter().position(|&x| !(x > 0.0)) {
        return Err(Error::precondition(format!("HWH bound needs positive row sums (row {i} sums to 0)")));
    }
    Ok(d)
}

/// `(1/Σ(A)) Σ a_ij √(d_i d_j)` with the support certificate `d_i d_j = μ²`.
pub fn hwh_bound(a: &DenseMatrix, tol: f64) -> Result<BoundReport> {
    check_tol(tol)?;
    let d = hwh_degrees(a)?;
    let total = a.total_sum().re;
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += a.get(i, j).re * (d[i] * d[j]).sqrt();
        }
    }
    let value = acc / total;
    let sigma = spectral::sigma(a)?.value;
    let mu2 = sigma * sigma;
    let zt = a.zero_tol();
    let mut max_residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if a.is_support(i, j, zt) {
                max_residual = max_residual.max((d[i] * d[j] - mu2).abs());
            }
        }
    }
    let mut report = BoundReport::new(BoundMethod::HwhBound, value, sigma, tol, BoundParams::default());
    report.support_certificate =
        Some(SupportCertificate { holds: max_residual <= tol * mu2.max(1.0), max_residual });
    Ok(report)
}

/// Schur's upper bound `√(max_{i,j} r_i c_j)` for nonnegative matrices.
pub fn schur_upper_bound(a: &DenseMatrix, tol: f64) -> Result<BoundReport> {
    check_tol(tol)?;
    if !a.is_nonnegative() {
        return Err(Error::precondition("Schur's bound needs a nonnegative matrix"));
    }
    let max_r = a.row_sums().iter().map(|z| z.re).fold(0.0, f64::max);
    let max_c = a.col_sums().iter().map(|z| z.re).fold(0.0, f64::max);
    let value = (max_r * max_c).sqrt();
    let sigma = spectral::sigma(a)?.value;
    Ok(BoundReport::new(BoundMethod::SchurUpper, value, sigma, tol, BoundParams::default()))
}
