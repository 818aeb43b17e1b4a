mod common;

use common::*;
use proptest::prelude::*;
use regmat::classify::{
    certify_theorem2, certify_theorem2_1, certify_theorem3, certify_theorem4, characterize_pseudo_regular, classify,
    evaluate_theorem2, evaluate_theorem3, evaluate_theorem4, relaxed_pseudo_regular,
};
use regmat::gen::{generate, paper_example, standard_corpus, PaperExample};
use regmat::DenseMatrix;

const TOL: f64 = 1e-8;

/// Corpus entries that meet the scalar hypothesis.
fn scalar_corpus() -> Vec<(String, DenseMatrix)> {
    standard_corpus()
        .into_iter()
        .map(|e| (e.name, generate(&e.spec).unwrap()))
        .filter(|(_, a)| a.detect_scalar(TOL).is_scalar)
        .collect()
}

#[test]
fn corpus_is_large_and_mixed() {
    let corpus = scalar_corpus();
    assert!(corpus.len() >= 50);
    let classes: Vec<_> = corpus.iter().map(|(_, a)| classify(a, TOL).unwrap()).collect();
    assert!(classes.iter().any(|c| c.is_regular));
    assert!(classes.iter().any(|c| c.is_almost_regular && !c.is_regular));
    assert!(classes.iter().any(|c| c.is_pseudo_regular && !c.is_almost_regular));
    assert!(classes.iter().any(|c| !c.is_pseudo_regular));
}

#[test]
fn containment_chain_on_corpus() {
    for (name, a) in scalar_corpus() {
        let c = classify(&a, TOL).unwrap();
        assert!(!c.is_regular || c.is_almost_regular, "{name}");
        assert!(!c.is_almost_regular || c.is_pseudo_regular, "{name}");
    }
}

#[test]
fn mean_equality_iff_regular() {
    for (name, a) in scalar_corpus() {
        let cert = certify_theorem4(&a, TOL).unwrap();
        assert_eq!(cert.holds, classify(&a, TOL).unwrap().is_regular, "{name}: gap {}", cert.gap);
        assert!(cert.implied_class_verified);
    }
}

#[test]
fn walk_equality_implies_pseudo_regular() {
    for (name, a) in scalar_corpus() {
        for s in 1..=2 {
            for r in 0..=2 {
                let cert = certify_theorem2(&a, s, r, TOL).unwrap();
                assert!(cert.implied_class_verified, "{name} s={s} r={r}");
            }
        }
    }
}

#[test]
fn two_sided_equality_implies_almost_regular() {
    for (name, a) in scalar_corpus() {
        for r in 1..=2 {
            for s in 1..=2 {
                let cert = certify_theorem2_1(&a, r, s, TOL).unwrap();
                assert!(cert.implied_class_verified, "{name} r={r} s={s}");
            }
        }
    }
}

/// At even orders the three conditions agree everywhere.
#[test]
fn weighted_equality_conditions_agree_at_even_orders() {
    for (name, a) in scalar_corpus() {
        for r in [2, 4] {
            let cert = certify_theorem3(&a, r, TOL, false).unwrap();
            assert!(cert.implied_class_verified, "{name} r={r}: {:?}", cert.details);
        }
    }
}

#[test]
fn spectral_characterization_matches_definition() {
    for (name, a) in scalar_corpus() {
        let ch = characterize_pseudo_regular(&a, TOL).unwrap();
        let c = classify(&a, TOL).unwrap();
        assert_eq!(ch.satisfied, c.is_pseudo_regular, "{name}: {ch:?}");
        if let Some(lambda) = c.pseudo_lambda {
            assert!(rel_close(ch.mu, lambda, 1e-8), "{name}");
        }
    }
}

#[test]
fn higher_order_proportionality_implies_pseudo_regular() {
    for (name, a) in scalar_corpus() {
        let pseudo = classify(&a, TOL).unwrap().is_pseudo_regular;
        for r in [5, 7, 9] {
            for s in (3..r).step_by(2) {
                if relaxed_pseudo_regular(&a, r, s, TOL).unwrap() {
                    assert!(pseudo, "{name} r={r} s={s}");
                }
            }
        }
    }
}

/// The complex example meets every equality while failing the hypothesis.
#[test]
fn scalarity_is_essential() {
    let a = paper_example(PaperExample::C2);
    assert!(!a.detect_scalar(TOL).is_scalar);
    assert!(evaluate_theorem2(&a, 1, 0, TOL).unwrap().holds);
    assert!(evaluate_theorem3(&a, 2, TOL, false).unwrap().holds);
    assert!(evaluate_theorem4(&a, TOL).unwrap().holds);
    assert!(classify(&a, TOL).is_err());
    assert!(certify_theorem4(&a, TOL).is_err());
}

proptest! {
    #[test]
    fn containment_chain_on_random(a in nonneg_matrix(6)) {
        prop_assume!(!a.is_zero());
        let c = classify(&a, TOL).unwrap();
        prop_assert!(!c.is_regular || c.is_almost_regular);
        prop_assert!(!c.is_almost_regular || c.is_pseudo_regular);
    }

    #[test]
    fn classification_ignores_phase_scale_and_order(
        seed in 0u64..60,
        theta in 0.0..std::f64::consts::TAU,
        k in 0.1..10.0f64,
    ) {
        let corpus = scalar_corpus();
        let (_, a) = &corpus[seed as usize % corpus.len()];
        let (m, n) = a.shape();
        let rows: Vec<usize> = (0..m).rev().collect();
        let cols: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
        let b = a.permuted(&rows, &cols).unwrap().scale(c(k * theta.cos(), k * theta.sin())).unwrap();
        let x = classify(a, TOL).unwrap();
        let y = classify(&b, TOL).unwrap();
        prop_assert_eq!(x.is_regular, y.is_regular);
        prop_assert_eq!(x.is_pseudo_regular, y.is_pseudo_regular);
        prop_assert_eq!(x.is_almost_regular, y.is_almost_regular);
        prop_assert!(rel_close(y.sigma, k * x.sigma, 1e-9));
    }
}
