#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use regmat::gen::{generate, GeneratorSpec};
use regmat::DenseMatrix;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_nonneg(m: usize, n: usize, density: f64, seed: u64) -> DenseMatrix {
    generate(&GeneratorSpec::RandomNonneg { m, n, density, seed, binary: false, symmetric: false }).unwrap()
}

pub fn random_complex(m: usize, n: usize, density: f64, seed: u64) -> DenseMatrix {
    generate(&GeneratorSpec::RandomComplex { m, n, density, seed }).unwrap()
}

pub fn random_symmetric(n: usize, density: f64, seed: u64) -> DenseMatrix {
    generate(&GeneratorSpec::RandomNonneg { m: n, n, density, seed, binary: false, symmetric: true }).unwrap()
}

/// Nonnegative entries with roughly a third of them zero.
pub fn nonneg_matrix(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop_oneof![1 => Just(0.0), 2 => 0.0..4.0f64], m * n)
            .prop_map(move |v| DenseMatrix::from_real(m, n, &v).unwrap())
    })
}

pub fn complex_matrix(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(m, n)| {
        prop::collection::vec(
            prop_oneof![1 => Just(c(0.0, 0.0)), 3 => (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| c(x, y))],
            m * n,
        )
        .prop_map(move |v| DenseMatrix::new(m, n, v).unwrap())
    })
}

pub fn symmetric_nonneg(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![1 => Just(0.0), 2 => 0.0..3.0f64], n * n).prop_map(move |v| {
            let mut e = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    e[i * n + j] = v[i * n + j];
                    e[j * n + i] = v[i * n + j];
                }
            }
            DenseMatrix::from_real(n, n, &e).unwrap()
        })
    })
}

/// `Σ` of the entries of `X`, with `X` given as a product of dense factors.
pub fn entry_sum(x: &DenseMatrix) -> Complex64 {
    x.entries().iter().sum()
}

/// `(AAᵀ)^l`, computed by repeated multiplication (real `A`).
pub fn gram_power(a: &DenseMatrix, l: usize) -> DenseMatrix {
    let g = a.matmul(&a.conj_transpose()).unwrap();
    let mut p = DenseMatrix::identity(a.rows());
    for _ in 0..l {
        p = p.matmul(&g).unwrap();
    }
    p
}

pub fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

/// Plain transpose, no conjugation.
pub fn transpose(a: &DenseMatrix) -> DenseMatrix {
    a.conj_transpose().map(|z| z.conj()).unwrap()
}
