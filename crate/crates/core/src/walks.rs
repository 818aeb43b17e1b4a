//! Generalized walk weights.
//!
//! `w^1(i) = 1` on `R ∪ C`; for `s >= 2` a row weight sums the matrix row
//! against the previous column weights and a column weight sums the matrix
//! column against the previous row weights. For a graph adjacency matrix,
//! `w^s(i)` counts walks on `s` vertices starting at `i`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexScalar, DenseMatrix};

/// Weights larger than this abort the recursion with [`Error::Scale`].
pub const WEIGHT_LIMIT: f64 = 1e300;

/// Per-index walk weights for orders `1..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkTable {
    order: usize,
    row_weights: Vec<Vec<ComplexScalar>>,
    col_weights: Vec<Vec<ComplexScalar>>,
    row_totals: Vec<ComplexScalar>,
    col_totals: Vec<ComplexScalar>,
}

impl WalkTable {
    /// Highest order available.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `w^s(i)` for `i ∈ R`.
    pub fn row(&self, s: usize, i: usize) -> ComplexScalar {
        self.row_weights[self.level(s)][i]
    }

    /// `w^s(j)` for `j ∈ C`.
    pub fn col(&self, s: usize, j: usize) -> ComplexScalar {
        self.col_weights[self.level(s)][j]
    }

    /// All row weights of order `s`.
    pub fn rows(&self, s: usize) -> &[ComplexScalar] {
        &self.row_weights[self.level(s)]
    }

    pub fn cols(&self, s: usize) -> &[ComplexScalar] {
        &self.col_weights[self.level(s)]
    }

    /// `w^s(R)`.
    pub fn row_total(&self, s: usize) -> ComplexScalar {
        self.row_totals[self.level(s)]
    }

    /// `w^s(C)`.
    pub fn col_total(&self, s: usize) -> ComplexScalar {
        self.col_totals[self.level(s)]
    }

    /// Real parts of the row weights of order `s`.
    pub fn rows_re(&self, s: usize) -> Vec<f64> {
        self.rows(s).iter().map(|z| z.re).collect()
    }

    pub fn cols_re(&self, s: usize) -> Vec<f64> {
        self.cols(s).iter().map(|z| z.re).collect()
    }

    fn level(&self, s: usize) -> usize {
        assert!(s >= 1 && s <= self.order, "walk order {s} outside 1..={}", self.order);
        s - 1
    }
}

/// Computes `w^s` for `s = 1..=order` level by level, `O(mn)` per level.
pub fn walk_table(a: &DenseMatrix, order: usize) -> Result<WalkTable> {
    if order == 0 {
        return Err(Error::precondition("walk order must be at least 1"));
    }
    let (m, n) = a.shape();
    let one = Complex64::new(1.0, 0.0);
    let mut row_weights = vec![vec![one; m]];
    let mut col_weights = vec![vec![one; n]];
    for s in 2..=order {
        let prev_col = &col_weights[s - 2];
        let prev_row = &row_weights[s - 2];
        let next_row = a.apply(prev_col);
        // column side: sum_k a_kj w(k), no conjugation
        let mut next_col = vec![Complex64::new(0.0, 0.0); n];
        for (i, w) in prev_row.iter().enumerate() {
            for (o, x) in next_col.iter_mut().zip(a.row(i)) {
                *o += x * w;
            }
        }
        let too_big = |v: &Vec<Complex64>| v.iter().any(|z| !(z.norm() <= WEIGHT_LIMIT));
        if too_big(&next_row) || too_big(&next_col) {
            return Err(Error::Scale { order: s });
        }
        row_weights.push(next_row);
        col_weights.push(next_col);
    }
    let row_totals = row_weights.iter().map(|v| v.iter().sum()).collect();
    let col_totals = col_weights.iter().map(|v| v.iter().sum()).collect();
    Ok(WalkTable { order, row_weights, col_weights, row_totals, col_totals })
}

/// Relative residual of `Σ_i w^{2r+1}(i) w^{2s+1}(i) = w^{2r+2s+1}(R)`.
///
/// Requires a real matrix.
pub fn walk_identity_residual(a: &DenseMatrix, r: usize, s: usize) -> Result<f64> {
    if !a.is_real() {
        return Err(Error::precondition("walk identity is checked on real matrices"));
    }
    let t = walk_table(a, 2 * r + 2 * s + 1)?;
    let lhs: f64 = t
        .rows_re(2 * r + 1)
        .iter()
        .zip(t.rows_re(2 * s + 1))
        .map(|(x, y)| x * y)
        .sum();
    let rhs = t.row_total(2 * r + 2 * s + 1).re;
    Ok((lhs - rhs).abs() / rhs.abs().max(1.0))
}

/// Compares `w^s(i)` against a brute-force count of walks on `s` vertices
/// starting at each vertex of the graph with adjacency matrix `g`.
pub fn graph_walk_count_equivalence(g: &DenseMatrix, s: usize) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::precondition("adjacency matrix must be square"));
    }
    let n = g.rows();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            let z = g.get(i, j);
            if z.im != 0.0 || (z.re != 0.0 && z.re != 1.0) || z != g.get(j, i) {
                return Err(Error::precondition("not a symmetric 0/1 adjacency matrix"));
            }
            if z.re == 1.0 {
                adj[i].push(j);
            }
        }
    }
    let t = walk_table(g, s.max(1))?;
    Ok((0..n).all(|i| {
        let w = t.row(s.max(1), i);
        let count = count_walks(&adj, i, s) as f64;
        w.im == 0.0 && w.re == count && t.col(s.max(1), i).re == count
    }))
}

fn count_walks(adj: &[Vec<usize>], start: usize, vertices: usize) -> u64 {
    if vertices <= 1 {
        return 1;
    }
    adj[start].iter().map(|&next| count_walks(adj, next, vertices - 1)).sum()
}
