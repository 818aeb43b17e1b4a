use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use regmat::bounds::BoundMethod;
use regmat::classify::Theorem;
use regmat::gen::{GeneratorSpec, PaperExample};
use regmat::DenseMatrix;
use regmat_cli::commands::{cmd_analyze, cmd_bound, cmd_certify, cmd_gen, Options};
use regmat_cli::io::{self, Format};
use regmat_cli::report::SCHEMA;
use regmat_cli::{json, Report};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn regmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regmat")).args(args).output().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_e1() {
    let r = cmd_analyze(&data("e1.mtx"), &Options::default()).unwrap();
    assert_eq!(r.schema, SCHEMA);
    assert!((r.sigma.value - 2.0).abs() < 1e-10);
    let c = r.classification.as_ref().unwrap();
    assert!(c.is_pseudo_regular && !c.is_regular && !c.is_almost_regular);
    assert_eq!(r.components.count, 1);
    assert!(r.bounds.iter().all(|b| b.is_valid()));
    assert!(r.certificates.iter().all(|c| c.implied_class_verified));
}

#[test]
fn analyze_complex_counterexample() {
    let r = cmd_analyze(&data("c2.mtx"), &Options::default()).unwrap();
    assert!((r.sigma.value - 2.0).abs() < 1e-10);
    assert!(r.classification.is_none());
    assert!(r.classification_error.as_deref().unwrap().contains("not scalar"));
    let t4 = r.certificates.iter().find(|c| c.theorem == Theorem::T4).unwrap();
    assert!(t4.holds && !t4.scalar);
}

#[test]
fn analyze_zero() {
    let r = cmd_analyze(&data("zero.mtx"), &Options::default()).unwrap();
    assert_eq!(r.sigma.value, 0.0);
    assert!(!r.bounds.is_empty());
    assert!(r.bounds.iter().all(|b| b.value == 0.0));
    assert!(r.classification_error.is_some());
    assert!(r.certificates.is_empty());
}

#[test]
fn bound_and_certify_examples() {
    let opts = Options::default();
    let b = cmd_bound(&data("e1.mtx"), BoundMethod::WalkBound, Some(3), Some(1), &opts).unwrap();
    assert!((b.value - 2.0).abs() < 1e-12 && b.tight);
    let c = cmd_certify(&data("e1.mtx"), Theorem::T2, Some(1), Some(0), &opts).unwrap();
    assert!(c.holds && c.implied_class_verified);
    let h = cmd_certify(&data("k23.mtx"), Theorem::Hwh, None, None, &opts).unwrap();
    assert!(h.holds && h.implied_class_verified);
    let t3 = cmd_certify(&data("w_star.mtx"), Theorem::T3, None, Some(2), &Options { literal_t3ii: true, ..opts })
        .unwrap();
    assert!(t3.holds && t3.implied_class_verified);
    assert!(t3.details.iter().any(|d| d.name == "ii_literal"));
}

#[test]
fn report_json_round_trips() {
    for f in ["e1.mtx", "c2.mtx", "zero.mtx", "w_star.mtx", "k23.mtx", "random_complex.csv"] {
        let r = cmd_analyze(&data(f), &Options { literal_t3ii: true, ..Options::default() }).unwrap();
        let text = json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r, "{f}");
        assert_eq!(json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn golden_files_are_byte_stable() {
    let cases = [
        ("e1.mtx", GeneratorSpec::PaperExample { which: PaperExample::E1 }),
        ("c2.mtx", GeneratorSpec::PaperExample { which: PaperExample::C2 }),
        ("regular_4x4.mtx", GeneratorSpec::Regular { m: 4, n: 4, row_support: 2, terms: 3, seed: 7 }),
        ("random_complex.csv", GeneratorSpec::RandomComplex { m: 3, n: 4, density: 0.8, seed: 5 }),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (name, spec) in cases {
        let out = dir.path().join(name);
        let (report, text) = cmd_gen(&spec, Some(&out)).unwrap();
        assert!(report.certified);
        let golden = std::fs::read_to_string(data(name)).unwrap();
        assert_eq!(text, golden, "{name}");
        assert_eq!(std::fs::read_to_string(&out).unwrap(), golden);
    }
}

#[test]
fn binary_gen_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e1.mtx");
    let o = regmat(&["gen", "--kind", "paper-example", "--which", "e1", "--out", path_str(&out)]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(data("e1.mtx")).unwrap());
}

#[test]
fn exit_codes() {
    let missing = regmat(&["analyze", "no/such/file.mtx"]);
    assert_eq!(missing.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mtx");
    std::fs::write(&bad, "%%MatrixMarket matrix array real general\n2 2\n1\nfoo\n3\n4\n").unwrap();
    let o = regmat(&["analyze", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    assert_eq!(regmat(&["classify", path_str(&data("c2.mtx"))]).status.code(), Some(4));
    assert_eq!(regmat(&["classify", path_str(&data("zero.mtx"))]).status.code(), Some(4));
    assert_eq!(
        regmat(&["bound", path_str(&data("e1.mtx")), "--method", "walk", "--p", "4", "--r", "1"]).status.code(),
        Some(4)
    );
    assert_eq!(regmat(&["--tol", "-1", "analyze", path_str(&data("e1.mtx"))]).status.code(), Some(2));
    assert_eq!(regmat(&["gen", "--kind", "regular", "--m", "3", "--n", "4", "--row-support", "1"]).status.code(), Some(2));
    assert_eq!(regmat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(regmat(&["classify", path_str(&data("e1.mtx"))]).status.code(), Some(0));
}

#[test]
fn json_flag_on_every_subcommand() {
    let e1 = data("e1.mtx");
    let e1 = path_str(&e1);
    for args in [
        vec!["--json", "analyze", e1],
        vec!["--json", "bound", e1, "--method", "mean"],
        vec!["--json", "classify", e1],
        vec!["--json", "components", e1],
        vec!["--json", "certify", e1, "--theorem", "T2.1"],
        vec!["--json", "gen", "--kind", "graph", "--graph", "star", "--n", "3"],
    ] {
        let o = regmat(&args);
        assert!(o.status.success(), "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v.is_object(), "{args:?}");
    }
}

#[test]
fn analyze_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = regmat(&["--json", "analyze", path_str(&data("p4.mtx")), "--out", path_str(&out)]);
    assert!(o.status.success() && o.stdout.is_empty());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let hwh = r.bounds.iter().find(|b| b.method == BoundMethod::HwhBound).unwrap();
    assert!(!hwh.tight && !hwh.support_certificate.unwrap().holds);
}

#[test]
fn symmetric_pattern_storage() {
    let (a, format) = regmat_cli::commands::read_matrix(&data("p3_pattern.mtx")).unwrap();
    assert_eq!(format, Format::MatrixMarket);
    let (p3, _) = regmat_cli::commands::read_matrix(&data("p3.mtx")).unwrap();
    assert_eq!(a, p3);
}

fn any_matrix() -> impl Strategy<Value = DenseMatrix> {
    (1usize..=6, 1usize..=6, any::<bool>()).prop_flat_map(|(m, n, real)| {
        let value = prop_oneof![
            Just(0.0),
            any::<f64>().prop_filter("finite", |x| x.is_finite()),
            -1e3..1e3f64,
        ];
        prop::collection::vec((value.clone(), value), m * n).prop_map(move |v| {
            let e = v.into_iter().map(|(x, y)| num_complex::Complex64::new(x, if real { 0.0 } else { y })).collect();
            DenseMatrix::new(m, n, e).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn formats_round_trip_exactly(a in any_matrix()) {
        for format in [Format::MatrixMarket, Format::Csv] {
            let back = io::parse(&io::write(&a, format), format).unwrap();
            prop_assert_eq!(&back, &a);
        }
    }
}
