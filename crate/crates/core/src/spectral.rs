//! Singular values and the walk-ratio estimate of `σ²`.
//!
//! [`largest_singular`] runs power iteration on `AA*`; [`hermitian_eigen`]
//! is a cyclic complex Jacobi eigensolver, and [`singular_values`] takes
//! square roots of the eigenvalues of the smaller Gram matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexScalar, DenseMatrix};
use crate::walks::walk_table;

pub const DEFAULT_POWER_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_JACOBI_TOL: f64 = 1e-14;
pub const DEFAULT_R_MAX: usize = 60;

const JACOBI_MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-10;
const START_PERTURBATION: f64 = 1e-6;
const RATIO_CONVERGENCE: f64 = 1e-9;
const DEGENERATE_PROJECTION: f64 = 1e-10;
/// Eigenvalues within this relative distance of the largest form the top eigenspace.
const TOP_CLUSTER_REL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResult {
    pub sigma: f64,
    /// Unit vector over `R`.
    pub left_vector: Vec<ComplexScalar>,
    /// Unit vector over `C`.
    pub right_vector: Vec<ComplexScalar>,
    pub iterations: usize,
    /// `‖A v − σ u‖ + ‖A* u − σ v‖`.
    pub residual: f64,
}

fn norm(v: &[ComplexScalar]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn scaled(v: &[ComplexScalar], c: f64) -> Vec<ComplexScalar> {
    v.iter().map(|z| z * c).collect()
}

fn dist(a: &[ComplexScalar], b: &[ComplexScalar], sb: f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y * sb).norm_sqr()).sum::<f64>().sqrt()
}

fn ones_unit(len: usize) -> Vec<ComplexScalar> {
    vec![Complex64::new(1.0 / (len as f64).sqrt(), 0.0); len]
}

/// Largest singular value by alternating power iteration.
///
/// The start vector is `j_m/√m` plus `1e-6` times an alternating sign
/// pattern, so the run is deterministic. Convergence is declared when the
/// residual is at most `tol * max(1, σ)`.
pub fn largest_singular(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    if !(tol > 0.0) {
        return Err(Error::precondition("tolerance must be positive"));
    }
    let (m, n) = a.shape();
    if a.is_zero() {
        return Ok(SpectralResult {
            sigma: 0.0,
            left_vector: ones_unit(m),
            right_vector: ones_unit(n),
            iterations: 0,
            residual: 0.0,
        });
    }

    let mut u: Vec<ComplexScalar> = (0..m)
        .map(|i| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(1.0 / (m as f64).sqrt() + START_PERTURBATION * sign, 0.0)
        })
        .collect();
    let nu = norm(&u);
    u = scaled(&u, 1.0 / nu);

    let mut w = a.apply_adjoint(&u);
    if norm(&w) == 0.0 {
        // start vector lies in ker(A*); restart from the heaviest row
        let heaviest = (0..m)
            .max_by(|&i, &k| {
                let ri: f64 = a.row(i).iter().map(|z| z.norm_sqr()).sum();
                let rk: f64 = a.row(k).iter().map(|z| z.norm_sqr()).sum();
                ri.total_cmp(&rk).then(k.cmp(&i))
            })
            .unwrap_or(0);
        u = vec![Complex64::new(0.0, 0.0); m];
        u[heaviest] = Complex64::new(1.0, 0.0);
        w = a.apply_adjoint(&u);
    }

    let mut best: Option<(f64, f64)> = None;
    for it in 1..=max_iter {
        let v = scaled(&w, 1.0 / norm(&w));
        let av = a.apply(&v);
        let sigma = norm(&av);
        u = scaled(&av, 1.0 / sigma);
        w = a.apply_adjoint(&u);
        // A v − σ u vanishes by construction of u
        let residual = dist(&w, &v, sigma);
        if best.is_none_or(|(_, r)| residual < r) {
            best = Some((sigma, residual));
        }
        if residual <= tol * sigma.max(1.0) {
            return Ok(SpectralResult {
                sigma,
                left_vector: u,
                right_vector: v,
                iterations: it,
                residual,
            });
        }
    }
    let (best_sigma, residual) = best.unwrap_or((0.0, f64::INFINITY));
    Err(Error::Convergence { iterations: max_iter, residual, best_sigma: Some(best_sigma) })
}

/// How `σ` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaMethod {
    PowerIteration,
    /// Jacobi eigensolver on the Gram matrix, used when power iteration stalls.
    JacobiGram,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaEstimate {
    pub value: f64,
    pub method: SigmaMethod,
    pub residual: f64,
}

/// `σ(A)` with default settings: power iteration, falling back to the
/// Jacobi route when two nearly equal top singular values stall it.
pub fn sigma(a: &DenseMatrix) -> Result<SigmaEstimate> {
    sigma_with(a, DEFAULT_POWER_TOL, DEFAULT_MAX_ITER)
}

pub fn sigma_with(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<SigmaEstimate> {
    match largest_singular(a, tol, max_iter) {
        Ok(r) => Ok(SigmaEstimate {
            value: r.sigma,
            method: SigmaMethod::PowerIteration,
            residual: r.residual,
        }),
        Err(Error::Convergence { .. }) => {
            let sv = singular_values(a, DEFAULT_JACOBI_TOL)?;
            Ok(SigmaEstimate { value: sv[0], method: SigmaMethod::JacobiGram, residual: f64::NAN })
        }
        Err(e) => Err(e),
    }
}

/// One eigenpair of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    /// Unit eigenvector.
    pub vector: Vec<ComplexScalar>,
}

/// Full eigensystem of a Hermitian matrix, eigenvalues descending.
///
/// Cyclic Jacobi: each rotation first rotates the phase of `h_pq` to make it
/// real, then applies the real symmetric plane rotation that annihilates it.
/// Sweeps stop once the off-diagonal Frobenius mass is at most
/// `tol * ‖H‖_F`.
pub fn hermitian_eigen(h: &DenseMatrix, tol: f64) -> Result<Vec<EigenPair>> {
    if !h.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::precondition("matrix is not Hermitian"));
    }
    let n = h.rows();
    let mut a: Vec<ComplexScalar> = h.entries().to_vec();
    for i in 0..n {
        a[i * n + i].im = 0.0;
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let fro = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let off = |a: &[ComplexScalar]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut off_mass = off(&a);
    while off_mass > tol * fro {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Convergence { iterations: sweeps, residual: off_mass, best_sigma: None });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let hpq = a[p * n + q];
                let mag = hpq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = hpq / mag; // e^{iφ}
                let alpha = a[p * n + p].re;
                let beta = a[q * n + q].re;
                let theta = 0.5 * (2.0 * mag).atan2(beta - alpha);
                let (s, c) = theta.sin_cos();
                // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                for k in 0..n {
                    let (x, y) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = x * jpp + y * jqp;
                    a[k * n + q] = x * jpq + y * jqq;
                }
                for k in 0..n {
                    let (x, y) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = jpp.conj() * x + jqp.conj() * y;
                    a[q * n + k] = jpq.conj() * x + jqq.conj() * y;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                for k in 0..n {
                    let (x, y) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = x * jpp + y * jqp;
                    v[k * n + q] = x * jpq + y * jqq;
                }
            }
        }
        off_mass = off(&a);
    }

    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|k| EigenPair {
            value: a[k * n + k].re,
            vector: (0..n).map(|i| v[i * n + k]).collect(),
        })
        .collect();
    pairs.sort_by(|x, y| y.value.total_cmp(&x.value));
    Ok(pairs)
}

/// All `min(m, n)` singular values, descending.
pub fn singular_values(a: &DenseMatrix, tol: f64) -> Result<Vec<f64>> {
    let gram = if a.rows() <= a.cols() {
        a.gram_rows()
    } else {
        a.conj_transpose().gram_rows()
    };
    Ok(hermitian_eigen(&gram, tol)?
        .into_iter()
        .map(|p| p.value.max(0.0).sqrt())
        .collect())
}

/// Squared norm of the projection of `j_m/√m` onto the eigenspace of the
/// largest eigenvalue of `AA*`.
pub fn top_eigenspace_ones_projection(a: &DenseMatrix) -> Result<f64> {
    let pairs = hermitian_eigen(&a.gram_rows(), DEFAULT_JACOBI_TOL)?;
    let top = pairs[0].value;
    let m = a.rows() as f64;
    Ok(pairs
        .iter()
        .filter(|p| p.value >= top - TOP_CLUSTER_REL * top.abs().max(f64::MIN_POSITIVE))
        .map(|p| p.vector.iter().sum::<Complex64>().norm_sqr() / m)
        .sum())
}

/// Walk-ratio sequences approximating `σ^{2s}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioEstimate {
    pub s: usize,
    /// `w^{2r+2s+1}(R) / w^{2r+1}(R)` for `r = 0, 1, ...`.
    pub ratios: Vec<f64>,
    /// `max_k w^{2r+2s+1}(k) / w^{2r+1}(k)` over rows with positive denominator.
    pub max_ratios: Vec<f64>,
    pub degenerate: bool,
    /// Squared norm of the projection of `j_m/√m` on the top eigenspace of `AA*`.
    pub top_projection: f64,
    /// Present iff the aggregate ratios converged and the case is not degenerate.
    pub limit: Option<f64>,
}

/// Fills both ratio sequences for `r = 0..=r_max`.
///
/// The input must be real; scalar matrices should be passed as their
/// nonnegative part. The case is degenerate when the top eigenspace of `AA*`
/// is (numerically) orthogonal to `j_m`, or when an odd-order total vanishes
/// while `σ > 0`. Only the aggregate sequence decides `limit`.
pub fn sigma_ratio_estimate(a: &DenseMatrix, s: usize, r_max: usize) -> Result<RatioEstimate> {
    if s == 0 {
        return Err(Error::precondition("s must be at least 1"));
    }
    if !a.is_real() {
        return Err(Error::precondition(
            "ratio estimator takes a real matrix (use the nonnegative part of a scalar matrix)",
        ));
    }
    let table = walk_table(a, 2 * r_max + 2 * s + 1)?;
    let sigma_positive = !a.is_zero();
    let top_projection = top_eigenspace_ones_projection(a)?;
    let mut degenerate = sigma_positive && top_projection <= DEGENERATE_PROJECTION;

    let mut ratios = Vec::with_capacity(r_max + 1);
    let mut max_ratios = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        let lo = 2 * r + 1;
        let hi = 2 * r + 2 * s + 1;
        let den = table.row_total(lo).re;
        if !(den > 0.0) {
            degenerate |= sigma_positive;
            break;
        }
        ratios.push(table.row_total(hi).re / den);
        let best = table
            .rows_re(lo)
            .iter()
            .zip(table.rows_re(hi))
            .filter(|(d, _)| **d > 0.0)
            .map(|(d, num)| num / d)
            .fold(f64::NEG_INFINITY, f64::max);
        max_ratios.push(best);
    }

    let limit = match (degenerate, ratios.len() == r_max + 1, ratios.as_slice()) {
        (false, true, [.., prev, last]) if (last - prev).abs() <= RATIO_CONVERGENCE * last.abs() => {
            Some(*last)
        }
        _ => None,
    };
    Ok(RatioEstimate { s, ratios, max_ratios, degenerate, top_projection, limit })
}
