//! Dense complex matrices and the elementary quantities built on them.
//!
//! Rows and columns live in separate index namespaces `R = {0..m}` and
//! `C = {0..n}`. Every "is this entry nonzero" decision goes through
//! [`DenseMatrix::zero_tol`], which is `1e-12` times the largest entry modulus.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Matrix entry type. Nonnegative reals are the case `im == 0, re >= 0`.
pub type ComplexScalar = Complex64;

/// Relative threshold below which an entry counts as zero.
pub const ZERO_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix {
    m: usize,
    n: usize,
    entries: Vec<ComplexScalar>,
}

impl DenseMatrix {
    /// Builds an `m x n` matrix from row-major entries.
    pub fn new(m: usize, n: usize, entries: Vec<ComplexScalar>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Dimension(format!("empty shape {m}x{n}")));
        }
        if entries.len() != m * n {
            return Err(Error::Dimension(format!(
                "expected {} entries for {m}x{n}, got {}",
                m * n,
                entries.len()
            )));
        }
        if let Some(k) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: k / n, col: k % n });
        }
        Ok(DenseMatrix { m, n, entries })
    }

    pub fn from_real(m: usize, n: usize, entries: &[f64]) -> Result<Self> {
        Self::new(m, n, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds a real matrix from a slice of equally long rows.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let flat: Vec<f64> = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::from_real(m, n, &flat)
    }

    pub fn from_rows<R: AsRef<[ComplexScalar]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(m, n, rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect())
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        assert!(m > 0 && n > 0, "empty shape");
        DenseMatrix { m, n, entries: vec![Complex64::new(0.0, 0.0); m * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        a
    }

    /// The all-ones `m x n` matrix.
    pub fn ones(m: usize, n: usize) -> Self {
        assert!(m > 0 && n > 0, "empty shape");
        DenseMatrix { m, n, entries: vec![Complex64::new(1.0, 0.0); m * n] }
    }

    /// Square diagonal matrix with the given real diagonal.
    pub fn diag(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Dimension("empty diagonal".into()));
        }
        let mut a = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            a.entries[i * n + i] = Complex64::new(v, 0.0);
        }
        Self::new(n, n, a.entries)
    }

    /// Block-diagonal composition; blocks keep their order along the diagonal.
    pub fn block_diag(blocks: &[DenseMatrix]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Dimension("no blocks".into()));
        }
        let m: usize = blocks.iter().map(|b| b.m).sum();
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zeros(m, n);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.m {
                for j in 0..b.n {
                    out.entries[(r0 + i) * n + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.m;
            c0 += b.n;
        }
        Ok(out)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[ComplexScalar] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Entrywise map; the result is validated for finiteness.
    pub fn map(&self, f: impl Fn(ComplexScalar) -> ComplexScalar) -> Result<Self> {
        Self::new(self.m, self.n, self.entries.iter().map(|&z| f(z)).collect())
    }

    pub fn scale(&self, c: ComplexScalar) -> Result<Self> {
        self.map(|z| z * c)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.m, self.n, other.m, other.n
            )));
        }
        Self::new(
            self.m,
            self.n,
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        )
    }

    /// `|A|`, the entrywise modulus.
    pub fn entrywise_abs(&self) -> DenseMatrix {
        DenseMatrix {
            m: self.m,
            n: self.n,
            entries: self.entries.iter().map(|z| Complex64::new(z.norm(), 0.0)).collect(),
        }
    }

    /// `A*`.
    pub fn conj_transpose(&self) -> DenseMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.n {
            for i in 0..self.m {
                entries.push(self.get(i, j).conj());
            }
        }
        DenseMatrix { m: self.n, n: self.m, entries }
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n != other.m {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.m, self.n, other.m, other.n
            )));
        }
        let (m, k, n) = (self.m, self.n, other.n);
        let mut out = vec![Complex64::new(0.0, 0.0); m * n];
        for i in 0..m {
            let out_row = &mut out[i * n..(i + 1) * n];
            for l in 0..k {
                let a = self.entries[i * k + l];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(l)) {
                    *o += a * b;
                }
            }
        }
        DenseMatrix::new(m, n, out)
    }

    /// `A A*`, Hermitian `m x m`.
    pub fn gram_rows(&self) -> DenseMatrix {
        let m = self.m;
        let mut out = vec![Complex64::new(0.0, 0.0); m * m];
        for i in 0..m {
            for k in i..m {
                let v: Complex64 =
                    self.row(i).iter().zip(self.row(k)).map(|(a, b)| a * b.conj()).sum();
                out[i * m + k] = v;
                out[k * m + i] = v.conj();
            }
            out[i * m + i].im = 0.0;
        }
        DenseMatrix { m, n: m, entries: out }
    }

    /// `A x` for `x` indexed by `C`.
    pub fn apply(&self, x: &[ComplexScalar]) -> Vec<ComplexScalar> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.m)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `A* y` for `y` indexed by `R`.
    pub fn apply_adjoint(&self, y: &[ComplexScalar]) -> Vec<ComplexScalar> {
        debug_assert_eq!(y.len(), self.m);
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for (i, yi) in y.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conj() * yi;
            }
        }
        out
    }

    /// `Σ(A)`, the sum of all entries.
    pub fn total_sum(&self) -> ComplexScalar {
        self.entries.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<ComplexScalar> {
        (0..self.m).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<ComplexScalar> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..self.m {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a;
            }
        }
        out
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Threshold for "a_ij != 0".
    pub fn zero_tol(&self) -> f64 {
        ZERO_REL_TOL * self.max_modulus()
    }

    #[inline]
    pub fn is_support(&self, i: usize, j: usize, zero_tol: f64) -> bool {
        self.get(i, j).norm() > zero_tol
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0 && z.re >= 0.0)
    }

    pub fn is_square(&self) -> bool {
        self.m == self.n
    }

    /// Hermitian within `rel_tol` times the largest modulus.
    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let tol = rel_tol * self.max_modulus();
        (0..self.m).all(|i| (i..self.n).all(|j| (self.get(i, j) - self.get(j, i).conj()).norm() <= tol))
    }

    /// Real parts as a plain vector, for matrices known to be real.
    pub fn real_entries(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.re).collect()
    }

    /// Submatrix on the given row and column indices, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<DenseMatrix> {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j));
            }
        }
        DenseMatrix::new(rows.len(), cols.len(), entries)
    }

    /// `P A Q`: row `k` of the result is row `row_perm[k]` of `A`, likewise for columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<DenseMatrix> {
        if !is_permutation(row_perm, self.m) || !is_permutation(col_perm, self.n) {
            return Err(Error::Dimension("not a permutation of the index set".into()));
        }
        self.submatrix(row_perm, col_perm)
    }

    /// Tests whether all nonzero entries share one argument.
    ///
    /// The candidate phase is that of the first nonzero entry in row-major
    /// order; every other nonzero entry `a` must satisfy
    /// `|a - phase * |a|| <= tol * |a|`. Entries at or below
    /// [`zero_tol`](Self::zero_tol) are treated as zero and dropped from the
    /// nonnegative part.
    pub fn detect_scalar(&self, tol: f64) -> ScalarityResult {
        let zt = self.zero_tol();
        let one = Complex64::new(1.0, 0.0);
        let phase = self
            .entries
            .iter()
            .find(|z| z.norm() > zt)
            .map_or(one, |z| z / z.norm());
        let consistent = self.entries.iter().filter(|z| z.norm() > zt).all(|z| {
            let r = z.norm();
            (z - phase * r).norm() <= tol * r
        });
        if !consistent {
            return ScalarityResult { is_scalar: false, phase: None, nonneg_part: None };
        }
        let nonneg = DenseMatrix {
            m: self.m,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|z| {
                    let r = z.norm();
                    Complex64::new(if r > zt { r } else { 0.0 }, 0.0)
                })
                .collect(),
        };
        ScalarityResult { is_scalar: true, phase: Some(phase), nonneg_part: Some(nonneg) }
    }
}

fn is_permutation(p: &[usize], len: usize) -> bool {
    if p.len() != len {
        return false;
    }
    let mut seen = vec![false; len];
    p.iter().all(|&k| k < len && !std::mem::replace(&mut seen[k], true))
}

/// Outcome of [`DenseMatrix::detect_scalar`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarityResult {
    pub is_scalar: bool,
    /// Unit-modulus common phase; present iff `is_scalar`.
    pub phase: Option<ComplexScalar>,
    /// `conj(phase) * A`, entrywise nonnegative real; present iff `is_scalar`.
    pub nonneg_part: Option<DenseMatrix>,
}

impl ScalarityResult {
    /// Unwraps the nonnegative part or reports a precondition violation.
    pub fn require(&self) -> Result<&DenseMatrix> {
        self.nonneg_part
            .as_ref()
            .ok_or_else(|| Error::precondition("matrix is not scalar (nonzero entries do not share one argument)"))
    }
}
