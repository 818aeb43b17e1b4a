//! The bipartite support graph of a matrix and its connected components.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::spectral::{singular_values, DEFAULT_JACOBI_TOL};

/// Singular values below this fraction of the largest one count as zero.
pub const NONZERO_SINGULAR_REL: f64 = 1e-6;

/// A vertex of the support graph. Rows and columns never compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Node {
    Row(usize),
    Col(usize),
}

/// Bipartite graph with classes `R` and `C`, one edge per nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub rows: usize,
    pub cols: usize,
    /// Edges `(i, j)` in row-major order.
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    fn adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut row_adj = vec![Vec::new(); self.rows];
        let mut col_adj = vec![Vec::new(); self.cols];
        for &(i, j) in &self.edges {
            row_adj[i].push(j);
            col_adj[j].push(i);
        }
        (row_adj, col_adj)
    }
}

pub fn bipartite_graph(a: &DenseMatrix) -> BipartiteGraph {
    let zt = a.zero_tol();
    let (m, n) = a.shape();
    let edges = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| a.is_support(i, j, zt))
        .collect();
    BipartiteGraph { rows: m, cols: n, edges }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    /// Ascending row indices of `A`.
    pub row_indices: Vec<usize>,
    /// Ascending column indices of `A`.
    pub col_indices: Vec<usize>,
    pub submatrix: DenseMatrix,
}

/// Components of `B(A)` together with the permutations that bring `A` to
/// block-diagonal form. Zero rows and columns are kept out of the components.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentDecomposition {
    /// Ordered by smallest contained row index.
    pub components: Vec<Component>,
    /// Component rows in order, then isolated rows.
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub isolated_rows: Vec<usize>,
    pub isolated_cols: Vec<usize>,
}

impl ComponentDecomposition {
    /// `P A Q` in block-diagonal form.
    pub fn block_form(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        a.permuted(&self.row_perm, &self.col_perm)
    }
}

/// Breadth-first search over `R ⊎ C`.
pub fn decompose(a: &DenseMatrix) -> ComponentDecomposition {
    let g = bipartite_graph(a);
    let (row_adj, col_adj) = g.adjacency();
    let (m, n) = a.shape();
    let mut row_seen = vec![false; m];
    let mut col_seen = vec![false; n];
    let mut components = Vec::new();
    let mut isolated_rows = Vec::new();

    for start in 0..m {
        if row_seen[start] {
            continue;
        }
        row_seen[start] = true;
        if row_adj[start].is_empty() {
            isolated_rows.push(start);
            continue;
        }
        let mut rows = vec![start];
        let mut cols = Vec::new();
        let mut queue = VecDeque::from([Node::Row(start)]);
        while let Some(node) = queue.pop_front() {
            match node {
                Node::Row(i) => {
                    for &j in &row_adj[i] {
                        if !std::mem::replace(&mut col_seen[j], true) {
                            cols.push(j);
                            queue.push_back(Node::Col(j));
                        }
                    }
                }
                Node::Col(j) => {
                    for &i in &col_adj[j] {
                        if !std::mem::replace(&mut row_seen[i], true) {
                            rows.push(i);
                            queue.push_back(Node::Row(i));
                        }
                    }
                }
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        let submatrix = a.submatrix(&rows, &cols).expect("component has at least one edge");
        components.push(Component { row_indices: rows, col_indices: cols, submatrix });
    }

    let isolated_cols: Vec<usize> = (0..n).filter(|&j| !col_seen[j]).collect();
    let row_perm = components
        .iter()
        .flat_map(|c| c.row_indices.iter().copied())
        .chain(isolated_rows.iter().copied())
        .collect();
    let col_perm = components
        .iter()
        .flat_map(|c| c.col_indices.iter().copied())
        .chain(isolated_cols.iter().copied())
        .collect();
    ComponentDecomposition { components, row_perm, col_perm, isolated_rows, isolated_cols }
}

/// `B(A)` is connected: one component covering every row and column.
pub fn is_connected(a: &DenseMatrix) -> bool {
    let d = decompose(a);
    d.components.len() == 1 && d.isolated_rows.is_empty() && d.isolated_cols.is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerReachability {
    pub reachable: bool,
    /// Smallest `r` with `((AA*)^r A)_ij != 0`.
    pub witness_r: Option<usize>,
}

/// Searches `r = 0..=r_cap` for a nonzero `(i, j)` entry of `(AA*)^r A`.
///
/// Works on the nonnegative part of a scalar matrix, so no cancellation can
/// hide support. Stops early once the support of the power stops growing.
/// `r_cap` defaults to `m + n`.
pub fn connectivity_via_powers(
    a: &DenseMatrix,
    i: usize,
    j: usize,
    r_cap: Option<usize>,
) -> Result<PowerReachability> {
    let (m, n) = a.shape();
    if i >= m || j >= n {
        return Err(Error::precondition(format!("index ({i}, {j}) outside {m}x{n}")));
    }
    let scalarity = a.detect_scalar(1e-10);
    let base: Vec<f64> = scalarity.require()?.real_entries();
    let cap = r_cap.unwrap_or(m + n);

    // AA* for the nonnegative part
    let mut gram = vec![0.0; m * m];
    for p in 0..m {
        for q in 0..m {
            gram[p * m + q] = (0..n).map(|k| base[p * n + k] * base[q * n + k]).sum();
        }
    }

    let mut power = base;
    for r in 0..=cap {
        if power[i * n + j] > 0.0 {
            return Ok(PowerReachability { reachable: true, witness_r: Some(r) });
        }
        let mut next = vec![0.0; m * n];
        for p in 0..m {
            for q in 0..m {
                let g = gram[p * m + q];
                if g == 0.0 {
                    continue;
                }
                for k in 0..n {
                    next[p * n + k] += g * power[q * n + k];
                }
            }
        }
        let scale = next.iter().copied().fold(0.0, f64::max);
        if scale > 0.0 {
            next.iter_mut().for_each(|x| *x /= scale);
        }
        let grew = next.iter().zip(&power).any(|(x, y)| (*x > 0.0) != (*y > 0.0));
        power = next;
        if !grew {
            break;
        }
    }
    Ok(PowerReachability { reachable: false, witness_r: None })
}

fn nonzero_sorted(mut values: Vec<f64>, floor: f64) -> Vec<f64> {
    values.retain(|&x| x > floor);
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

/// Whether the nonzero singular values of `A` are, as a multiset, the union
/// of those of its components (each value matched within `tol * max(1, σ)`).
pub fn singular_multiset_check(a: &DenseMatrix, tol: f64) -> Result<bool> {
    let whole = singular_values(a, DEFAULT_JACOBI_TOL)?;
    let top = whole.first().copied().unwrap_or(0.0);
    let floor = NONZERO_SINGULAR_REL * top;
    let whole = nonzero_sorted(whole, floor);
    let mut merged = Vec::new();
    for c in decompose(a).components {
        merged.extend(singular_values(&c.submatrix, DEFAULT_JACOBI_TOL)?);
    }
    let merged = nonzero_sorted(merged, floor);
    Ok(whole.len() == merged.len()
        && whole.iter().zip(&merged).all(|(x, y)| (x - y).abs() <= tol * x.max(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn real(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_real_rows(rows).unwrap()
    }

    fn e1() -> DenseMatrix {
        real(&[&[1., 1., 0., 0.], &[1., 0., 1., 0.], &[1., 0., 0., 1.]])
    }

    fn j2_plus_2() -> DenseMatrix {
        DenseMatrix::block_diag(&[DenseMatrix::ones(2, 2), real(&[&[2.]])]).unwrap()
    }

    #[test]
    fn graph_examples() {
        let g = bipartite_graph(&e1());
        assert_eq!(g.edges.len(), 6);
        assert!(is_connected(&e1()));
        assert_eq!(bipartite_graph(&DenseMatrix::identity(2)).edges.len(), 2);
        assert_eq!(decompose(&DenseMatrix::identity(2)).components.len(), 2);
        let z = decompose(&DenseMatrix::zeros(2, 3));
        assert!(bipartite_graph(&DenseMatrix::zeros(2, 3)).edges.is_empty());
        assert!(z.components.is_empty());
        assert_eq!(z.isolated_rows, vec![0, 1]);
        assert_eq!(z.isolated_cols, vec![0, 1, 2]);
    }

    #[test]
    fn tiny_entries_are_not_edges() {
        let a = real(&[&[1., 1e-13], &[0., 1.]]);
        assert_eq!(bipartite_graph(&a).edges, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&j2_plus_2());
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].submatrix, DenseMatrix::ones(2, 2));
        assert_eq!(d.components[1].submatrix, real(&[&[2.]]));

        let d = decompose(&e1());
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].submatrix, e1());

        let d = decompose(&real(&[&[1., 0.], &[0., 0.]]));
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].submatrix, real(&[&[1.]]));
        assert_eq!((d.isolated_rows.clone(), d.isolated_cols.clone()), (vec![1], vec![1]));
    }

    #[test]
    fn block_form_of_scrambled_blocks() {
        // rows {0,2} x cols {1,2} and row 1 x col 0
        let a = real(&[&[0., 1., 2.], &[5., 0., 0.], &[0., 3., 4.]]);
        let d = decompose(&a);
        assert_eq!(d.row_perm, vec![0, 2, 1]);
        assert_eq!(d.col_perm, vec![1, 2, 0]);
        let b = d.block_form(&a).unwrap();
        assert_eq!(b, real(&[&[1., 2., 0.], &[3., 4., 0.], &[0., 0., 5.]]));
    }

    #[test]
    fn connectedness() {
        assert!(!is_connected(&DenseMatrix::identity(2)));
        assert!(is_connected(&real(&[&[5.]])));
        assert!(!is_connected(&real(&[&[0.]])));
        assert!(!is_connected(&real(&[&[1., 0.]])));
    }

    #[test]
    fn powers_examples() {
        let r = connectivity_via_powers(&e1(), 0, 3, None).unwrap();
        assert_eq!(r, PowerReachability { reachable: true, witness_r: Some(1) });
        let r = connectivity_via_powers(&DenseMatrix::identity(2), 0, 1, None).unwrap();
        assert_eq!(r, PowerReachability { reachable: false, witness_r: None });
        let r = connectivity_via_powers(&e1(), 2, 0, None).unwrap();
        assert_eq!(r.witness_r, Some(0));
        let c = Complex64::new;
        let c2 = DenseMatrix::from_rows(&[[c(1., 1.), c(1., -1.)], [c(1., -1.), c(1., 1.)]]).unwrap();
        assert!(matches!(connectivity_via_powers(&c2, 0, 0, None), Err(Error::Precondition(_))));
        assert!(connectivity_via_powers(&e1(), 3, 0, None).is_err());
    }

    #[test]
    fn multiset_examples() {
        assert!(singular_multiset_check(&j2_plus_2(), 1e-8).unwrap());
        assert!(singular_multiset_check(&e1(), 1e-8).unwrap());
    }
}
