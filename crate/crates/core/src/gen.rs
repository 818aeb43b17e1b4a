//! Deterministic matrix generators.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)`, so a spec always yields the same bits.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::structure::is_connected;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PaperExample {
    /// The connected 3x4 matrix that is pseudo-regular but not regular.
    E1,
    /// The complex 2x2 matrix that meets the equality conditions without being scalar.
    C2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GraphFamily {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Star { leaves: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// Each entry is nonzero with probability `density`; nonzero values are
    /// uniform on `(0, 1]`, or exactly 1 when `binary`. With `symmetric` the
    /// upper triangle is mirrored (requires `m == n`).
    RandomNonneg {
        m: usize,
        n: usize,
        density: f64,
        seed: u64,
        #[serde(default)]
        binary: bool,
        #[serde(default)]
        symmetric: bool,
    },
    /// Nonzero entries have real and imaginary parts uniform on `[-1, 1)`.
    RandomComplex { m: usize, n: usize, density: f64, seed: u64 },
    /// Sum of `terms` shifted cyclic 0/1 patterns with `row_support` ones per
    /// row and integer weights in `1..=3`, then randomly permuted. Feasible
    /// iff `1 <= row_support <= n` and `n` divides `m * row_support`.
    Regular { m: usize, n: usize, row_support: usize, terms: usize, seed: u64 },
    /// Block-diagonal composition of 0/1 regular blocks `(m, n, row_support)`,
    /// each rescaled to have largest singular value `target_sigma`.
    AlmostRegular {
        blocks: Vec<(usize, usize, usize)>,
        target_sigma: f64,
        seed: u64,
        #[serde(default = "default_true")]
        permute: bool,
    },
    /// Block-diagonal composition, optionally scrambled by random row and
    /// column permutations.
    BlockDiag {
        blocks: Vec<GeneratorSpec>,
        #[serde(default)]
        shuffle_seed: Option<u64>,
    },
    Graph { graph: GraphFamily },
    PaperExample { which: PaperExample },
}

fn default_true() -> bool {
    true
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_shape(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        Err(Error::Infeasible(format!("empty shape {m}x{n}")))
    } else {
        Ok(())
    }
}

fn check_density(density: f64) -> Result<()> {
    if (0.0..=1.0).contains(&density) {
        Ok(())
    } else {
        Err(Error::Infeasible(format!("density {density} outside [0, 1]")))
    }
}

/// Cyclic 0/1 pattern: row `i` holds ones at columns `(i*k + offset + t) mod n`, `t < k`.
fn cyclic_pattern(m: usize, n: usize, k: usize, offset: usize) -> Result<Vec<f64>> {
    check_shape(m, n)?;
    if k == 0 || k > n || !(m * k).is_multiple_of(n) {
        return Err(Error::Infeasible(format!(
            "no {m}x{n} 0/1 matrix with {k} ones per row and equal column sums (need 1 <= k <= n and n | m*k)"
        )));
    }
    let mut out = vec![0.0; m * n];
    for i in 0..m {
        for t in 0..k {
            out[i * n + (i * k + offset + t) % n] = 1.0;
        }
    }
    Ok(out)
}

fn shuffled(a: &DenseMatrix, rng: &mut ChaCha8Rng) -> Result<DenseMatrix> {
    let mut rows: Vec<usize> = (0..a.rows()).collect();
    let mut cols: Vec<usize> = (0..a.cols()).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    a.permuted(&rows, &cols)
}

pub fn generate(spec: &GeneratorSpec) -> Result<DenseMatrix> {
    match spec {
        &GeneratorSpec::RandomNonneg { m, n, density, seed, binary, symmetric } => {
            check_shape(m, n)?;
            check_density(density)?;
            if symmetric && m != n {
                return Err(Error::Infeasible("symmetric matrices must be square".into()));
            }
            let mut rng = rng(seed);
            let mut out = vec![0.0; m * n];
            for i in 0..m {
                let start = if symmetric { i } else { 0 };
                for j in start..n {
                    let keep = rng.gen::<f64>() < density;
                    let value = 1.0 - rng.gen::<f64>();
                    let x = match (keep, binary) {
                        (false, _) => 0.0,
                        (true, true) => 1.0,
                        (true, false) => value,
                    };
                    out[i * n + j] = x;
                    if symmetric {
                        out[j * n + i] = x;
                    }
                }
            }
            DenseMatrix::from_real(m, n, &out)
        }
        &GeneratorSpec::RandomComplex { m, n, density, seed } => {
            check_shape(m, n)?;
            check_density(density)?;
            let mut rng = rng(seed);
            let entries = (0..m * n)
                .map(|_| {
                    let keep = rng.gen::<f64>() < density;
                    let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    if keep {
                        z
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect();
            DenseMatrix::new(m, n, entries)
        }
        &GeneratorSpec::Regular { m, n, row_support, terms, seed } => {
            let mut rng = rng(seed);
            let mut acc = vec![0.0; m * n];
            for _ in 0..terms.max(1) {
                let offset = rng.gen_range(0..n.max(1));
                let weight = rng.gen_range(1..=3) as f64;
                let p = cyclic_pattern(m, n, row_support, offset)?;
                acc.iter_mut().zip(p).for_each(|(a, x)| *a += weight * x);
            }
            shuffled(&DenseMatrix::from_real(m, n, &acc)?, &mut rng)
        }
        GeneratorSpec::AlmostRegular { blocks, target_sigma, seed, permute } => {
            if blocks.is_empty() || !(*target_sigma > 0.0) {
                return Err(Error::Infeasible("need at least one block and a positive target".into()));
            }
            let mut rng = rng(*seed);
            let mut built = Vec::with_capacity(blocks.len());
            for &(m, n, k) in blocks {
                let p = cyclic_pattern(m, n, k, 0)?;
                // a regular nonnegative block has σ² = row sum · column sum
                let sigma = ((k * (m * k / n)) as f64).sqrt();
                let scale = target_sigma / sigma;
                let scaled: Vec<f64> = p.iter().map(|x| x * scale).collect();
                built.push(DenseMatrix::from_real(m, n, &scaled)?);
            }
            let a = DenseMatrix::block_diag(&built)?;
            if *permute {
                shuffled(&a, &mut rng)
            } else {
                Ok(a)
            }
        }
        GeneratorSpec::BlockDiag { blocks, shuffle_seed } => {
            let built = blocks.iter().map(generate).collect::<Result<Vec<_>>>()?;
            let a = DenseMatrix::block_diag(&built)?;
            match shuffle_seed {
                Some(seed) => shuffled(&a, &mut rng(*seed)),
                None => Ok(a),
            }
        }
        GeneratorSpec::Graph { graph } => graph_adjacency(*graph),
        GeneratorSpec::PaperExample { which } => Ok(paper_example(*which)),
    }
}

fn graph_adjacency(g: GraphFamily) -> Result<DenseMatrix> {
    let (n, edges): (usize, Vec<(usize, usize)>) = match g {
        GraphFamily::Path { n } => (n, (1..n).map(|i| (i - 1, i)).collect()),
        GraphFamily::Cycle { n } => {
            if n < 3 {
                return Err(Error::Infeasible("a cycle needs at least 3 vertices".into()));
            }
            (n, (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        GraphFamily::Complete { n } => {
            (n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect())
        }
        GraphFamily::CompleteBipartite { a, b } => {
            (a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect())
        }
        GraphFamily::Star { leaves } => (leaves + 1, (1..=leaves).map(|j| (0, j)).collect()),
    };
    check_shape(n, n)?;
    let mut out = vec![0.0; n * n];
    for (i, j) in edges {
        out[i * n + j] = 1.0;
        out[j * n + i] = 1.0;
    }
    DenseMatrix::from_real(n, n, &out)
}

pub fn paper_example(which: PaperExample) -> DenseMatrix {
    match which {
        PaperExample::E1 => {
            DenseMatrix::from_real_rows(&[[1., 1., 0., 0.], [1., 0., 1., 0.], [1., 0., 0., 1.]])
        }
        PaperExample::C2 => {
            let c = Complex64::new;
            DenseMatrix::from_rows(&[[c(1., 1.), c(1., -1.)], [c(1., -1.), c(1., 1.)]])
        }
    }
    .expect("fixed example is well formed")
}

/// `J₂ ⊕ [√2 √2]`: almost regular (both components have σ = 2) but not regular.
pub fn w_star() -> DenseMatrix {
    generate(&GeneratorSpec::AlmostRegular {
        blocks: vec![(2, 2, 2), (1, 2, 2)],
        target_sigma: 2.0,
        seed: 0,
        permute: false,
    })
    .expect("fixed witness is feasible")
}

/// Re-verifies the property a spec advertises. Kinds that claim nothing
/// certify vacuously.
pub fn certify(spec: &GeneratorSpec, matrix: &DenseMatrix) -> bool {
    const TOL: f64 = 1e-8;
    match spec {
        GeneratorSpec::Regular { .. } => classify(matrix, TOL).is_ok_and(|c| c.is_regular),
        GeneratorSpec::AlmostRegular { .. } => classify(matrix, TOL).is_ok_and(|c| c.is_almost_regular),
        GeneratorSpec::Graph { .. } => {
            let n = matrix.rows();
            matrix.is_square()
                && (0..n).all(|i| {
                    matrix.get(i, i).norm() == 0.0
                        && (0..n).all(|j| {
                            let z = matrix.get(i, j);
                            z == matrix.get(j, i) && z.im == 0.0 && (z.re == 0.0 || z.re == 1.0)
                        })
                })
        }
        GeneratorSpec::PaperExample { which: PaperExample::E1 } => {
            is_connected(matrix)
                && classify(matrix, TOL).is_ok_and(|c| c.is_pseudo_regular && !c.is_regular)
        }
        GeneratorSpec::PaperExample { which: PaperExample::C2 } => !matrix.detect_scalar(TOL).is_scalar,
        GeneratorSpec::RandomNonneg { symmetric: true, .. } => matrix.is_hermitian(0.0),
        GeneratorSpec::RandomNonneg { .. }
        | GeneratorSpec::RandomComplex { .. }
        | GeneratorSpec::BlockDiag { .. } => true,
    }
}

/// A named corpus entry.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GeneratorSpec,
}

fn entry(name: impl Into<String>, spec: GeneratorSpec) -> CorpusEntry {
    CorpusEntry { name: name.into(), spec }
}

/// The fixed test corpus: the two worked examples, named graphs, certified regular
/// and almost regular witnesses, block compositions and seeded random
/// nonnegative matrices. Every entry is nonzero.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    use GeneratorSpec::*;
    let mut out = vec![
        entry("e1", PaperExample { which: self::PaperExample::E1 }),
        entry("c2", PaperExample { which: self::PaperExample::C2 }),
        entry("w_star", AlmostRegular { blocks: vec![(2, 2, 2), (1, 2, 2)], target_sigma: 2.0, seed: 0, permute: false }),
    ];
    let graphs = [
        ("p3", GraphFamily::Path { n: 3 }),
        ("p4", GraphFamily::Path { n: 4 }),
        ("p5", GraphFamily::Path { n: 5 }),
        ("c4", GraphFamily::Cycle { n: 4 }),
        ("c5", GraphFamily::Cycle { n: 5 }),
        ("k3", GraphFamily::Complete { n: 3 }),
        ("k4", GraphFamily::Complete { n: 4 }),
        ("k23", GraphFamily::CompleteBipartite { a: 2, b: 3 }),
        ("star4", GraphFamily::Star { leaves: 4 }),
    ];
    out.extend(graphs.into_iter().map(|(name, graph)| entry(name, Graph { graph })));

    let regular = [
        (3, 3, 1, 1, 11),
        (4, 4, 2, 3, 7),
        (3, 6, 2, 2, 1),
        (6, 4, 2, 2, 2),
        (5, 5, 3, 3, 3),
        (2, 6, 3, 1, 4),
        (4, 6, 3, 2, 5),
        (2, 3, 3, 1, 6),
        (8, 8, 3, 4, 8),
    ];
    for (m, n, k, terms, seed) in regular {
        out.push(entry(format!("regular_{m}x{n}_s{seed}"), Regular { m, n, row_support: k, terms, seed }));
    }

    let almost = [
        (vec![(2, 2, 2), (1, 3, 3), (3, 3, 1)], 2.0, 21),
        (vec![(2, 4, 2), (3, 3, 2)], 3.0, 22),
        (vec![(1, 1, 1), (2, 2, 1), (2, 4, 2)], 1.5, 23),
    ];
    for (blocks, target_sigma, seed) in almost {
        out.push(entry(
            format!("almost_regular_s{seed}"),
            AlmostRegular { blocks, target_sigma, seed, permute: true },
        ));
    }

    for seed in 0..6u64 {
        let blocks = (0..3)
            .map(|k| {
                let s = 100 + 10 * seed + k;
                RandomNonneg { m: 1 + (s % 3) as usize, n: 1 + (s % 4) as usize, density: 1.0, seed: s, binary: false, symmetric: false }
            })
            .collect();
        out.push(entry(format!("blocks_s{seed}"), BlockDiag { blocks, shuffle_seed: Some(seed) }));
    }

    let densities = [1.0, 0.7, 0.4];
    for seed in 0..36u64 {
        let m = 1 + (seed * 7 % 8) as usize;
        let n = 1 + (seed * 5 % 8) as usize;
        let density = densities[(seed % 3) as usize];
        out.push(entry(
            format!("random_{m}x{n}_s{seed}"),
            RandomNonneg { m, n, density, seed: 1000 + seed, binary: false, symmetric: false },
        ));
    }
    for seed in 0..6u64 {
        out.push(entry(
            format!("random_binary_s{seed}"),
            RandomNonneg { m: 4 + seed as usize % 3, n: 5, density: 0.5, seed: 2000 + seed, binary: true, symmetric: false },
        ));
    }
    out.retain(|e| generate(&e.spec).is_ok_and(|a| !a.is_zero()));
    out
}
