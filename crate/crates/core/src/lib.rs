//! Walk weights, lower bounds on the largest singular value, and
//! regularity classification for dense complex matrices.
//!
//! - [`matrix`]: dense complex matrices, sums, scalar-matrix detection
//! - [`walks`]: walk weights `w^s(i)`, `w^s(R)`, `w^s(C)`
//! - [`spectral`]: `σ(A)`, Hermitian Jacobi eigensolver, walk-ratio estimator
//! - [`bounds`]: lower bounds on `σ(A)` and Schur's upper bound
//! - [`structure`]: bipartite support graph and components
//! - [`classify`]: regular / pseudo-regular / almost regular, equality certificates
//! - [`gen`]: deterministic generators and the test corpus

// `!(x > 0.0)` is used on purpose so that NaN takes the failing branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod classify;
pub mod error;
pub mod gen;
pub mod matrix;
pub mod spectral;
pub mod structure;
pub mod walks;

pub use error::{Error, Result};
pub use matrix::{ComplexScalar, DenseMatrix, ScalarityResult};
