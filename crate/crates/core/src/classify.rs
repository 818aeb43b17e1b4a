//! Regular, pseudo-regular and almost regular matrices, and certificates
//! for the equality cases of the walk-weight bounds.
//!
//! All classification runs on the nonnegative part of a scalar matrix. The
//! `evaluate_*` functions compute equality conditions for any matrix (on the
//! nonnegative part when scalar, on `A` itself otherwise) without checking
//! hypotheses; the `certify_*` functions require a nonzero scalar matrix and
//! cross-check the theorem's conclusion against [`classify`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::hwh_bound;
use crate::error::{Error, Result};
use crate::matrix::{ComplexScalar, DenseMatrix, ScalarityResult};
use crate::spectral::{self, hermitian_eigen, DEFAULT_JACOBI_TOL};
use crate::structure::decompose;
use crate::walks::walk_table;

/// Gram eigenvalues below this fraction of the largest are treated as zero.
const ZERO_EIGEN_REL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentClass {
    pub row_indices: Vec<usize>,
    pub col_indices: Vec<usize>,
    pub regular: bool,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub scalarity: ScalarityResult,
    pub sigma: f64,
    pub is_regular: bool,
    pub is_pseudo_regular: bool,
    /// `λ` with `w⁵(i) = λ w³(i)`; present iff pseudo-regular.
    pub pseudo_lambda: Option<f64>,
    pub is_almost_regular: bool,
    pub per_component: Vec<ComponentClass>,
    pub tol: f64,
}

fn spread_ok(values: &[f64], tol: f64) -> bool {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max - min <= tol * max.abs()
}

fn re(v: &[ComplexScalar]) -> Vec<f64> {
    v.iter().map(|z| z.re).collect()
}

/// Equal row sums and equal column sums (nonnegative input).
fn sums_regular(a: &DenseMatrix, tol: f64) -> bool {
    spread_ok(&re(&a.row_sums()), tol) && spread_ok(&re(&a.col_sums()), tol)
}

/// `w^hi(i) = λ w^lo(i)` for all rows, `λ = w^hi(R) / w^lo(R)`.
fn proportional_rows(a: &DenseMatrix, hi: usize, lo: usize, tol: f64) -> Result<Option<f64>> {
    let t = walk_table(a, hi)?;
    let den = t.row_total(lo).re;
    if !(den > 0.0) {
        return Ok(None);
    }
    let lambda = t.row_total(hi).re / den;
    let upper = t.rows_re(hi);
    let lower = t.rows_re(lo);
    let scale = upper.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let dev = upper.iter().zip(&lower).map(|(u, l)| (u - lambda * l).abs()).fold(0.0, f64::max);
    Ok((dev <= tol * scale).then_some(lambda))
}

fn nonzero_scalar(a: &DenseMatrix, tol: f64) -> Result<(ScalarityResult, DenseMatrix)> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::precondition("tolerance must be positive and finite"));
    }
    if a.is_zero() {
        return Err(Error::precondition("classification is defined for nonzero matrices"));
    }
    let s = a.detect_scalar(tol);
    let n = s.require()?.clone();
    Ok((s, n))
}

/// Classifies a nonzero scalar matrix.
pub fn classify(a: &DenseMatrix, tol: f64) -> Result<ClassificationReport> {
    let (scalarity, n) = nonzero_scalar(a, tol)?;
    let sigma = spectral::sigma(&n)?.value;
    let is_regular = sums_regular(&n, tol);
    let pseudo_lambda = proportional_rows(&n, 5, 3, tol)?;

    let mut per_component = Vec::new();
    for c in decompose(&n).components {
        per_component.push(ComponentClass {
            regular: sums_regular(&c.submatrix, tol),
            sigma: spectral::sigma(&c.submatrix)?.value,
            row_indices: c.row_indices,
            col_indices: c.col_indices,
        });
    }
    let is_almost_regular = per_component
        .iter()
        .all(|c| c.regular && (c.sigma - sigma).abs() <= tol * sigma.max(1.0));

    let report = ClassificationReport {
        scalarity,
        sigma,
        is_regular,
        is_pseudo_regular: pseudo_lambda.is_some(),
        pseudo_lambda,
        is_almost_regular,
        per_component,
        tol,
    };
    debug_assert!(!report.is_regular || report.is_almost_regular, "regular but not almost regular");
    debug_assert!(
        !report.is_almost_regular || report.is_pseudo_regular,
        "almost regular but not pseudo-regular"
    );
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoRegularCharacterization {
    pub satisfied: bool,
    /// Rayleigh quotient of `w³` under `AA*`.
    pub mu: f64,
    /// Relative residual `‖AA* w³ − μ w³‖ / ‖AA* w³‖`.
    pub eigenvector_residual: f64,
    /// Nonzero eigenvalues other than `μ` whose eigenspace is not orthogonal to `j_m`.
    pub offending_eigenvalues: Vec<f64>,
}

/// Spectral characterization of pseudo-regularity: `w³` is an eigenvector
/// of `AA*` for a nonzero `μ`, and every other nonzero eigenspace is
/// orthogonal to `j_m`.
pub fn characterize_pseudo_regular(a: &DenseMatrix, tol: f64) -> Result<PseudoRegularCharacterization> {
    let (_, n) = nonzero_scalar(a, tol)?;
    let m = n.rows();
    let gram = n.gram_rows();
    let w3: Vec<ComplexScalar> = walk_table(&n, 3)?.rows(3).to_vec();
    let gw3 = gram.apply(&w3);
    let dot = |x: &[ComplexScalar], y: &[ComplexScalar]| -> f64 {
        x.iter().zip(y).map(|(a, b)| (a.conj() * b).re).sum()
    };
    let ww = dot(&w3, &w3);
    let mu = if ww > 0.0 { dot(&w3, &gw3) / ww } else { 0.0 };
    let gnorm = dot(&gw3, &gw3).sqrt();
    let resid = gw3.iter().zip(&w3).map(|(g, w)| (g - w * mu).norm_sqr()).sum::<f64>().sqrt();
    let eigenvector_residual = if gnorm > 0.0 { resid / gnorm } else { f64::INFINITY };

    let pairs = hermitian_eigen(&gram, DEFAULT_JACOBI_TOL)?;
    let top = pairs[0].value;
    let mut clusters: Vec<(f64, f64)> = Vec::new(); // (eigenvalue, squared projection)
    for p in pairs.iter().filter(|p| p.value > ZERO_EIGEN_REL * top) {
        let proj = p.vector.iter().sum::<Complex64>().norm_sqr() / m as f64;
        match clusters.last_mut() {
            Some((v, acc)) if (*v - p.value).abs() <= tol * top => *acc += proj,
            _ => clusters.push((p.value, proj)),
        }
    }
    let offending_eigenvalues: Vec<f64> = clusters
        .iter()
        .filter(|(v, proj)| (v - mu).abs() > tol * top && proj.sqrt() > tol)
        .map(|(v, _)| *v)
        .collect();

    let eigen_ok = mu > ZERO_EIGEN_REL * top && eigenvector_residual <= tol;
    Ok(PseudoRegularCharacterization {
        satisfied: eigen_ok && offending_eigenvalues.is_empty(),
        mu,
        eigenvector_residual,
        offending_eigenvalues,
    })
}

/// `w^r(i) = λ w^s(i)` on all rows for odd `r > s >= 3`.
pub fn relaxed_pseudo_regular(a: &DenseMatrix, r: usize, s: usize, tol: f64) -> Result<bool> {
    if r.is_multiple_of(2) || s.is_multiple_of(2) || !(r > s && s >= 3) {
        return Err(Error::precondition(format!("need odd r > s >= 3, got r={r}, s={s}")));
    }
    let (_, n) = nonzero_scalar(a, tol)?;
    Ok(proportional_rows(&n, r, s, tol)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// `σ^{2s} w^{2r+1}(R) = w^{2r+2s+1}(R)` implies pseudo-regular.
    T2,
    /// Row and column conditions together imply almost regular.
    #[serde(rename = "T2.1")]
    T2_1,
    /// Almost regular, the support condition, and equality in the weighted bound.
    T3,
    /// Regular iff `σ = |Σ(A)| / √(nm)`.
    T4,
    /// Equality case of the Hoffman–Wolfe–Hofmeister bound.
    Hwh,
}

impl std::str::FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "T2" => Ok(Theorem::T2),
            "T2.1" | "T2_1" => Ok(Theorem::T2_1),
            "T3" => Ok(Theorem::T3),
            "T4" => Ok(Theorem::T4),
            "HWH" => Ok(Theorem::Hwh),
            other => Err(format!("unknown theorem `{other}` (expected T2, T2.1, T3, T4 or HWH)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
    /// Relative residual; absent for purely combinatorial conditions.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EqualityCertificate {
    pub theorem: Theorem,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
    /// Whether the equality condition holds (`gap <= tol`).
    pub holds: bool,
    /// Relative residual of the equality condition.
    pub gap: f64,
    /// Whether the matrix is scalar, i.e. the theorem's hypothesis is met.
    pub scalar: bool,
    /// The theorem's conclusion agrees with the classifier. Always false when
    /// the hypothesis is not met.
    pub implied_class_verified: bool,
    pub details: Vec<ConditionCheck>,
    pub tol: f64,
}

fn rel_gap(x: ComplexScalar, y: ComplexScalar) -> f64 {
    let scale = x.norm().max(y.norm());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).norm() / scale
    }
}

/// The matrix equality conditions are evaluated on, and its `σ`.
struct Working {
    matrix: DenseMatrix,
    scalar: bool,
    sigma: f64,
}

impl Working {
    fn new(a: &DenseMatrix, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::precondition("tolerance must be positive and finite"));
        }
        let s = a.detect_scalar(tol);
        let (matrix, scalar) = match s.nonneg_part {
            Some(n) => (n, true),
            None => (a.clone(), false),
        };
        let sigma = spectral::sigma(&matrix)?.value;
        Ok(Working { matrix, scalar, sigma })
    }

    fn certificate(&self, theorem: Theorem, gap: f64, tol: f64, details: Vec<ConditionCheck>) -> EqualityCertificate {
        EqualityCertificate {
            theorem,
            r: None,
            s: None,
            holds: gap <= tol,
            gap,
            scalar: self.scalar,
            implied_class_verified: false,
            details,
            tol,
        }
    }
}

fn check(name: &str, gap: f64, tol: f64) -> ConditionCheck {
    ConditionCheck { name: name.into(), holds: gap <= tol, gap: Some(gap) }
}

fn sigma_pow(sigma: f64, k: usize) -> Complex64 {
    Complex64::new(sigma.powi(k as i32), 0.0)
}

/// `σ^{2s} w^{2r+1}(R) = w^{2r+2s+1}(R)` for `s >= 1`, `r >= 0`.
pub fn evaluate_theorem2(a: &DenseMatrix, s: usize, r: usize, tol: f64) -> Result<EqualityCertificate> {
    if s == 0 {
        return Err(Error::precondition("s must be at least 1"));
    }
    let w = Working::new(a, tol)?;
    let t = walk_table(&w.matrix, 2 * r + 2 * s + 1)?;
    let gap = rel_gap(sigma_pow(w.sigma, 2 * s) * t.row_total(2 * r + 1), t.row_total(2 * r + 2 * s + 1));
    let mut c = w.certificate(Theorem::T2, gap, tol, vec![check("walk_ratio_equality", gap, tol)]);
    c.r = Some(r);
    c.s = Some(s);
    Ok(c)
}

/// `σ^{2s} w¹(R) = w^{2s+1}(R)` and `σ^{2r} w¹(C) = w^{2r+1}(C)` for `r, s >= 1`.
pub fn evaluate_theorem2_1(a: &DenseMatrix, r: usize, s: usize, tol: f64) -> Result<EqualityCertificate> {
    if r == 0 || s == 0 {
        return Err(Error::precondition("r and s must be at least 1"));
    }
    let w = Working::new(a, tol)?;
    let t = walk_table(&w.matrix, 2 * r.max(s) + 1)?;
    let row_gap = rel_gap(sigma_pow(w.sigma, 2 * s) * t.row_total(1), t.row_total(2 * s + 1));
    let col_gap = rel_gap(sigma_pow(w.sigma, 2 * r) * t.col_total(1), t.col_total(2 * r + 1));
    let gap = row_gap.max(col_gap);
    let details = vec![check("rows", row_gap, tol), check("cols", col_gap, tol)];
    let mut c = w.certificate(Theorem::T2_1, gap, tol, details);
    c.r = Some(r);
    c.s = Some(s);
    Ok(c)
}

/// Equality in the weighted bound at order `r` (condition (iii)) plus the
/// support condition (ii), in the form `|w^r(i) w^r(j)| = σ^{2(r-1)}` on
/// every nonzero entry. At `r = 1` that support condition is vacuous.
///
/// With `diagnostics`, two alternative readings of (ii) are also reported:
/// `ii_aggregate` (`σ² w^r(i) w^r(j) = w^r(R) w^r(C)`) and `ii_literal`
/// (`|w^r(i) w^r(j)| = σ² |w^r(R) w^r(C)|`). Neither enters the verdict.
pub fn evaluate_theorem3(a: &DenseMatrix, r: usize, tol: f64, diagnostics: bool) -> Result<EqualityCertificate> {
    if r == 0 {
        return Err(Error::precondition("r must be at least 1"));
    }
    let w = Working::new(a, tol)?;
    let t = walk_table(&w.matrix, r)?;
    let rows = t.rows(r);
    let cols = t.cols(r);
    let wr = t.row_total(r);
    let wc = t.col_total(r);
    let sigma = w.sigma;

    let lhs = sigma * (wr * wc).norm().sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, wi) in rows.iter().enumerate() {
        for (aij, wj) in w.matrix.row(i).iter().zip(cols) {
            acc += aij * (wi * wj).norm().sqrt();
        }
    }
    let gap_iii = rel_gap(Complex64::new(lhs, 0.0), Complex64::new(acc.norm(), 0.0));

    let zt = w.matrix.zero_tol();
    let target = sigma_pow(sigma, 2 * (r - 1));
    let aggregate = wr * wc;
    let literal = Complex64::new(sigma * sigma * aggregate.norm(), 0.0);
    let (mut gap_ii, mut gap_agg, mut gap_literal) = (0.0f64, 0.0f64, 0.0f64);
    for (i, wi) in rows.iter().enumerate() {
        for (j, wj) in cols.iter().enumerate() {
            if !w.matrix.is_support(i, j, zt) {
                continue;
            }
            let prod = wi * wj;
            gap_ii = gap_ii.max(rel_gap(Complex64::new(prod.norm(), 0.0), target));
            gap_agg = gap_agg.max(rel_gap(prod * sigma * sigma, aggregate));
            gap_literal = gap_literal.max(rel_gap(Complex64::new(prod.norm(), 0.0), literal));
        }
    }

    let mut details = vec![check("ii", gap_ii, tol), check("iii", gap_iii, tol)];
    if diagnostics {
        details.push(check("ii_aggregate", gap_agg, tol));
        details.push(check("ii_literal", gap_literal, tol));
    }
    let mut c = w.certificate(Theorem::T3, gap_iii, tol, details);
    c.r = Some(r);
    Ok(c)
}

/// `σ = |Σ(A)| / √(nm)`.
pub fn evaluate_theorem4(a: &DenseMatrix, tol: f64) -> Result<EqualityCertificate> {
    let w = Working::new(a, tol)?;
    let mean = w.matrix.total_sum().norm() / ((a.rows() * a.cols()) as f64).sqrt();
    let gap = rel_gap(Complex64::new(w.sigma, 0.0), Complex64::new(mean, 0.0));
    Ok(w.certificate(Theorem::T4, gap, tol, vec![check("mean_equality", gap, tol)]))
}

fn certified(mut cert: EqualityCertificate, verified: bool) -> EqualityCertificate {
    cert.implied_class_verified = verified;
    cert
}

/// Walk-ratio equality on a nonzero scalar matrix; when it holds the matrix
/// must classify as pseudo-regular.
pub fn certify_theorem2(a: &DenseMatrix, s: usize, r: usize, tol: f64) -> Result<EqualityCertificate> {
    let class = classify(a, tol)?;
    let cert = evaluate_theorem2(a, s, r, tol)?;
    let ok = !cert.holds || class.is_pseudo_regular;
    Ok(certified(cert, ok))
}

/// Row and column walk equalities on a nonzero scalar matrix; when both hold
/// the matrix must classify as almost regular.
pub fn certify_theorem2_1(a: &DenseMatrix, r: usize, s: usize, tol: f64) -> Result<EqualityCertificate> {
    let class = classify(a, tol)?;
    let cert = evaluate_theorem2_1(a, r, s, tol)?;
    let ok = !cert.holds || class.is_almost_regular;
    Ok(certified(cert, ok))
}

/// Weighted-bound equality on a nonzero scalar matrix. Adds condition (i) (almost
/// regular) to the details; `implied_class_verified` is the three-way
/// agreement of (i), (ii) and (iii).
pub fn certify_theorem3(a: &DenseMatrix, r: usize, tol: f64, diagnostics: bool) -> Result<EqualityCertificate> {
    let class = classify(a, tol)?;
    let mut cert = evaluate_theorem3(a, r, tol, diagnostics)?;
    let i = class.is_almost_regular;
    let ii = cert.details[0].holds;
    let iii = cert.details[1].holds;
    cert.details.insert(0, ConditionCheck { name: "i".into(), holds: i, gap: None });
    Ok(certified(cert, i == ii && ii == iii))
}

/// Mean-bound equality on a nonzero scalar matrix: holds iff regular.
pub fn certify_theorem4(a: &DenseMatrix, tol: f64) -> Result<EqualityCertificate> {
    let class = classify(a, tol)?;
    let cert = evaluate_theorem4(a, tol)?;
    let ok = cert.holds == class.is_regular;
    Ok(certified(cert, ok))
}

/// Equality in the HWH bound, cross-checked against the support condition
/// `d_i d_j = μ²`.
pub fn hwh_equality_certificate(a: &DenseMatrix, tol: f64) -> Result<EqualityCertificate> {
    let b = hwh_bound(a, tol)?;
    let support = b.support_certificate.expect("hwh bound carries its certificate");
    let gap = rel_gap(Complex64::new(b.sigma, 0.0), Complex64::new(b.value, 0.0));
    let mu2 = b.sigma * b.sigma;
    let support_gap = if mu2 > 0.0 { support.max_residual / mu2 } else { support.max_residual };
    let holds = gap <= tol;
    Ok(EqualityCertificate {
        theorem: Theorem::Hwh,
        r: None,
        s: None,
        holds,
        gap,
        scalar: true,
        implied_class_verified: holds == support.holds,
        details: vec![
            check("bound_equality", gap, tol),
            ConditionCheck { name: "support".into(), holds: support.holds, gap: Some(support_gap) },
        ],
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-8;

    fn real(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_real_rows(rows).unwrap()
    }

    fn e1() -> DenseMatrix {
        real(&[&[1., 1., 0., 0.], &[1., 0., 1., 0.], &[1., 0., 0., 1.]])
    }

    fn c2() -> DenseMatrix {
        let c = Complex64::new;
        DenseMatrix::from_rows(&[[c(1., 1.), c(1., -1.)], [c(1., -1.), c(1., 1.)]]).unwrap()
    }

    fn w_star() -> DenseMatrix {
        let s = 2f64.sqrt();
        DenseMatrix::block_diag(&[DenseMatrix::ones(2, 2), real(&[&[s, s]])]).unwrap()
    }

    fn path(n: usize) -> DenseMatrix {
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n - 1 {
            rows[i][i + 1] = 1.0;
            rows[i + 1][i] = 1.0;
        }
        DenseMatrix::from_real_rows(&rows).unwrap()
    }

    fn k23() -> DenseMatrix {
        let mut rows = vec![vec![0.0; 5]; 5];
        for i in 0..2 {
            for j in 2..5 {
                rows[i][j] = 1.0;
                rows[j][i] = 1.0;
            }
        }
        DenseMatrix::from_real_rows(&rows).unwrap()
    }

    #[test]
    fn classify_e1() {
        let c = classify(&e1(), TOL).unwrap();
        assert!(c.is_pseudo_regular && !c.is_regular && !c.is_almost_regular);
        assert!((c.pseudo_lambda.unwrap() - 4.0).abs() < 1e-12);
        assert!((c.sigma - 2.0).abs() < 1e-12);
    }

    #[test]
    fn classify_transpose_of_e1_follows_the_definition() {
        // w⁵ = (24,8,8,8) = 4 (6,2,2,2) = 4 w³ on the rows of E1*
        let c = classify(&e1().conj_transpose(), TOL).unwrap();
        assert!(c.is_pseudo_regular);
        assert!((c.pseudo_lambda.unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn classify_block_examples() {
        let regular = DenseMatrix::block_diag(&[DenseMatrix::ones(2, 2), real(&[&[2.]])]).unwrap();
        let c = classify(&regular, TOL).unwrap();
        assert!(c.is_regular && c.is_almost_regular && c.is_pseudo_regular);

        let c = classify(&w_star(), TOL).unwrap();
        assert!(!c.is_regular && c.is_almost_regular && c.is_pseudo_regular);
        assert_eq!(c.per_component.len(), 2);
        assert!(c.per_component.iter().all(|k| k.regular && (k.sigma - 2.0).abs() < 1e-12));

        let j2_1 = DenseMatrix::block_diag(&[DenseMatrix::ones(2, 2), real(&[&[1.]])]).unwrap();
        let c = classify(&j2_1, TOL).unwrap();
        assert!(!c.is_pseudo_regular && !c.is_almost_regular && !c.is_regular);
    }

    #[test]
    fn classify_preconditions() {
        assert!(matches!(classify(&DenseMatrix::zeros(2, 2), TOL), Err(Error::Precondition(_))));
        assert!(matches!(classify(&c2(), TOL), Err(Error::Precondition(_))));
        // a rotated nonnegative matrix is scalar and classifies like its modulus
        let rot = e1().scale(Complex64::from_polar(2.0, -1.1)).unwrap();
        let c = classify(&rot, TOL).unwrap();
        assert!(c.is_pseudo_regular && !c.is_regular);
        assert!((c.pseudo_lambda.unwrap() - 16.0).abs() < 1e-9);
    }

    #[test]
    fn characterization_examples() {
        let p = characterize_pseudo_regular(&e1(), TOL).unwrap();
        assert!(p.satisfied && (p.mu - 4.0).abs() < 1e-12 && p.offending_eigenvalues.is_empty());

        let j2_1 = DenseMatrix::block_diag(&[DenseMatrix::ones(2, 2), real(&[&[1.]])]).unwrap();
        let p = characterize_pseudo_regular(&j2_1, TOL).unwrap();
        assert!(!p.satisfied);

        let p = characterize_pseudo_regular(&DenseMatrix::ones(2, 2), TOL).unwrap();
        assert!(p.satisfied && (p.mu - 4.0).abs() < 1e-12);
    }

    #[test]
    fn relaxed_examples() {
        assert!(relaxed_pseudo_regular(&e1(), 7, 3, TOL).unwrap());
        assert!(relaxed_pseudo_regular(&DenseMatrix::identity(3), 5, 3, TOL).unwrap());
        let j2_1 = DenseMatrix::block_diag(&[DenseMatrix::ones(2, 2), real(&[&[1.]])]).unwrap();
        assert!(!relaxed_pseudo_regular(&j2_1, 7, 5, TOL).unwrap());
        assert!(relaxed_pseudo_regular(&e1(), 5, 1, TOL).is_err());
        assert!(relaxed_pseudo_regular(&e1(), 6, 3, TOL).is_err());
        assert!(relaxed_pseudo_regular(&e1(), 3, 5, TOL).is_err());
    }

    #[test]
    fn theorem2_examples() {
        let c = certify_theorem2(&e1(), 1, 0, TOL).unwrap();
        assert!(c.holds && c.implied_class_verified);
        for (s, r) in [(1, 0), (1, 3), (2, 1)] {
            let c = certify_theorem2(&DenseMatrix::ones(2, 2), s, r, TOL).unwrap();
            assert!(c.holds && c.implied_class_verified);
        }
        let c = certify_theorem2(&real(&[&[2., 1.], &[0., 1.]]), 1, 0, TOL).unwrap();
        assert!(!c.holds && c.implied_class_verified);
        assert!(c.gap > 0.2);
    }

    #[test]
    fn theorem2_1_examples() {
        let c = certify_theorem2_1(&DenseMatrix::ones(2, 2), 1, 1, TOL).unwrap();
        assert!(c.holds && c.implied_class_verified);
        let c = certify_theorem2_1(&e1(), 1, 1, TOL).unwrap();
        assert!(!c.holds && c.implied_class_verified);
        assert!(c.details[0].holds && !c.details[1].holds);
        let c = certify_theorem2_1(&w_star(), 1, 1, TOL).unwrap();
        assert!(c.holds && c.implied_class_verified);
    }

    #[test]
    fn theorem3_examples() {
        for (m, n) in [(2, 3), (4, 4), (1, 5)] {
            for r in 1..=4 {
                let c = certify_theorem3(&DenseMatrix::ones(m, n), r, TOL, false).unwrap();
                assert!(c.details.iter().all(|d| d.holds), "{m}x{n} r={r}: {c:?}");
                assert!(c.holds && c.implied_class_verified);
            }
        }
        let c = certify_theorem3(&e1(), 2, TOL, false).unwrap();
        assert!(!c.holds && c.implied_class_verified);
        assert!(c.details.iter().all(|d| !d.holds));

        let c = certify_theorem3(&w_star(), 2, TOL, false).unwrap();
        assert!(c.holds && c.implied_class_verified);
        let c = certify_theorem3(&DenseMatrix::identity(3), 2, TOL, false).unwrap();
        assert!(c.holds && c.implied_class_verified);
    }

    #[test]
    fn theorem3_breaks_at_odd_order_off_regular_matrices() {
        // W* is almost regular but not regular; at odd r the weighted-bound
        // equality reduces to the r = 1 mean equality, which needs regularity
        for r in [1, 3] {
            let c = certify_theorem3(&w_star(), r, TOL, false).unwrap();
            assert!(c.details[0].holds, "(i)");
            assert!(c.details[1].holds, "(ii)");
            assert!(!c.details[2].holds, "(iii)");
            assert!(!c.implied_class_verified);
        }
    }

    #[test]
    fn theorem3_diagnostic_forms() {
        let c = certify_theorem3(&DenseMatrix::identity(3), 1, TOL, true).unwrap();
        let get = |name: &str| c.details.iter().find(|d| d.name == name).unwrap().holds;
        assert!(get("ii"));
        assert!(!get("ii_aggregate"));
        assert!(!get("ii_literal"));
    }

    #[test]
    fn theorem4_examples() {
        let c = certify_theorem4(&DenseMatrix::identity(4), TOL).unwrap();
        assert!(c.holds && c.implied_class_verified);
        let c = certify_theorem4(&e1(), TOL).unwrap();
        assert!(!c.holds && c.implied_class_verified);
        let c = certify_theorem4(&DenseMatrix::ones(2, 3), TOL).unwrap();
        assert!(c.holds && c.implied_class_verified);
    }

    #[test]
    fn non_scalar_counterexample_satisfies_equalities() {
        assert!(certify_theorem4(&c2(), TOL).is_err());
        let t2 = evaluate_theorem2(&c2(), 1, 0, TOL).unwrap();
        let t3 = evaluate_theorem3(&c2(), 2, TOL, false).unwrap();
        let t4 = evaluate_theorem4(&c2(), TOL).unwrap();
        for c in [&t2, &t3, &t4] {
            assert!(c.holds && !c.scalar && !c.implied_class_verified, "{c:?}");
            assert!(c.gap <= 1e-10);
        }
    }

    #[test]
    fn hwh_certificates() {
        for g in [path(3), k23()] {
            let c = hwh_equality_certificate(&g, TOL).unwrap();
            assert!(c.holds && c.implied_class_verified && c.details[1].holds);
        }
        let c = hwh_equality_certificate(&path(4), TOL).unwrap();
        assert!(!c.holds && !c.details[1].holds && c.implied_class_verified);
        assert!(hwh_equality_certificate(&e1(), TOL).is_err());
    }

    #[test]
    fn theorem_names_parse() {
        assert_eq!("t2.1".parse::<Theorem>(), Ok(Theorem::T2_1));
        assert_eq!("HWH".parse::<Theorem>(), Ok(Theorem::Hwh));
        assert!("T5".parse::<Theorem>().is_err());
    }
}
