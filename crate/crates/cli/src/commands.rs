//! The subcommands as library functions, so tests can call them directly.

use std::fs;
use std::path::Path;

use regmat::bounds::{self, BoundMethod, BoundReport};
use regmat::classify::{self, EqualityCertificate, Theorem};
use regmat::gen::{self, GeneratorSpec};
use regmat::spectral::{self, DEFAULT_MAX_ITER, DEFAULT_POWER_TOL};
use regmat::structure::decompose;
use regmat::{DenseMatrix, Error};

use crate::io::{self, Format};
use crate::report::{Classification, ComponentSummary, GenReport, InputInfo, Report, SigmaInfo, Tolerances, SCHEMA, TOOL_VERSION};
use crate::CliError;

/// Largest odd walk order in the default bound grid.
pub const WALK_P_MAX: usize = 9;
pub const WEIGHTED_ORDERS: [usize; 3] = [1, 2, 3];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub tol: f64,
    pub max_iter: usize,
    /// Also report the alternative readings of the support condition.
    pub literal_t3ii: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { tol: bounds::DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER, literal_t3ii: false }
    }
}

impl Options {
    fn check(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Input(format!("--tol must be positive and finite, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(CliError::Input("--max-iter must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn read_matrix(path: &Path) -> Result<(DenseMatrix, Format), CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let format = Format::from_path(path);
    let a = io::parse(&text, format).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((a, format))
}

fn sigma_info(a: &DenseMatrix, opts: &Options) -> Result<SigmaInfo, CliError> {
    Ok(spectral::sigma_with(a, DEFAULT_POWER_TOL, opts.max_iter)?.into())
}

/// Runs `f`, turning a precondition violation into a note.
fn or_note<T>(notes: &mut Vec<String>, what: &str, r: regmat::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Precondition(msg)) => {
            notes.push(format!("{what} skipped: {msg}"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn default_bounds(a: &DenseMatrix, tol: f64, notes: &mut Vec<String>) -> Result<Vec<BoundReport>, CliError> {
    let scalarity = a.detect_scalar(tol);
    let mut out = Vec::new();
    if scalarity.is_scalar {
        for r in (1..WALK_P_MAX).step_by(2) {
            for p in (r + 2..=WALK_P_MAX).step_by(2) {
                out.push(bounds::walk_bound(a, p, r, tol)?);
            }
        }
    } else {
        notes.push("walk bounds skipped: matrix is not scalar".into());
    }
    for r in WEIGHTED_ORDERS {
        out.push(bounds::weighted_bound(a, r, tol)?);
    }
    out.push(bounds::mean_bound(a, tol)?);
    if let Some(b) = or_note(notes, "hwh bound", bounds::hwh_bound(a, tol))? {
        out.push(b);
    }
    match &scalarity.nonneg_part {
        Some(n) => out.push(bounds::schur_upper_bound(n, tol)?),
        None => notes.push("schur bound skipped: matrix is not scalar".into()),
    }
    Ok(out)
}

fn default_certificates(
    a: &DenseMatrix,
    scalar: bool,
    opts: &Options,
    notes: &mut Vec<String>,
) -> Result<Vec<EqualityCertificate>, CliError> {
    let tol = opts.tol;
    let mut out = if scalar {
        vec![
            classify::certify_theorem2(a, 1, 0, tol)?,
            classify::certify_theorem2_1(a, 1, 1, tol)?,
            classify::certify_theorem3(a, 2, tol, opts.literal_t3ii)?,
            classify::certify_theorem4(a, tol)?,
        ]
    } else {
        notes.push(
            "matrix is not scalar: equality conditions are evaluated on the matrix itself and no class is implied".into(),
        );
        vec![
            classify::evaluate_theorem2(a, 1, 0, tol)?,
            classify::evaluate_theorem2_1(a, 1, 1, tol)?,
            classify::evaluate_theorem3(a, 2, tol, opts.literal_t3ii)?,
            classify::evaluate_theorem4(a, tol)?,
        ]
    };
    if a.is_square() && a.is_real() && a.is_nonnegative() && a.is_hermitian(1e-10) {
        if let Some(c) = or_note(notes, "hwh certificate", classify::hwh_equality_certificate(a, tol))? {
            out.push(c);
        }
    }
    Ok(out)
}

fn component_summary(a: &DenseMatrix) -> Result<ComponentSummary, CliError> {
    let d = decompose(a);
    let sigmas = d
        .components
        .iter()
        .map(|c| spectral::sigma(&c.submatrix).map(|s| s.value))
        .collect::<regmat::Result<Vec<_>>>()?;
    Ok(ComponentSummary::new(&d, sigmas))
}

/// The full pipeline on an in-memory matrix.
pub fn analyze_matrix(a: &DenseMatrix, input: InputInfo, opts: &Options) -> Result<Report, CliError> {
    opts.check()?;
    let mut notes = Vec::new();
    let components = component_summary(a)?;
    let sigma = sigma_info(a, opts)?;
    let bounds = default_bounds(a, opts.tol, &mut notes)?;

    let (classification, classification_error) = match classify::classify(a, opts.tol) {
        Ok(c) => (Some(Classification::from(&c)), None),
        Err(Error::Precondition(msg)) => (None, Some(msg)),
        Err(e) => return Err(e.into()),
    };
    let certificates = if a.is_zero() {
        notes.push("certificates skipped: zero matrix".into());
        Vec::new()
    } else {
        let scalar = classification.as_ref().is_some_and(|c| c.is_scalar);
        default_certificates(a, scalar, opts, &mut notes)?
    };

    Ok(Report {
        schema: SCHEMA,
        tool_version: TOOL_VERSION.into(),
        input,
        tolerances: Tolerances { tol: opts.tol, power_tol: DEFAULT_POWER_TOL, max_iter: opts.max_iter },
        sigma,
        bounds,
        classification,
        classification_error,
        certificates,
        components,
        notes,
    })
}

fn input_info(path: &Path, format: Format, a: &DenseMatrix) -> InputInfo {
    InputInfo { path: path.display().to_string(), format, rows: a.rows(), cols: a.cols() }
}

pub fn cmd_analyze(path: &Path, opts: &Options) -> Result<Report, CliError> {
    let (a, format) = read_matrix(path)?;
    analyze_matrix(&a, input_info(path, format, &a), opts)
}

pub fn cmd_bound(
    path: &Path,
    method: BoundMethod,
    p: Option<usize>,
    r: Option<usize>,
    opts: &Options,
) -> Result<BoundReport, CliError> {
    opts.check()?;
    let (a, _) = read_matrix(path)?;
    let tol = opts.tol;
    let report = match method {
        BoundMethod::WalkBound => bounds::walk_bound(&a, p.unwrap_or(3), r.unwrap_or(1), tol)?,
        BoundMethod::WeightedBound => bounds::weighted_bound(&a, r.unwrap_or(1), tol)?,
        BoundMethod::MeanBound => bounds::mean_bound(&a, tol)?,
        BoundMethod::HwhBound => bounds::hwh_bound(&a, tol)?,
        BoundMethod::SchurUpper => {
            let n = a.detect_scalar(tol).require()?.clone();
            bounds::schur_upper_bound(&n, tol)?
        }
    };
    Ok(report)
}

/// Exits with a precondition error on zero or non-scalar input.
pub fn cmd_classify(path: &Path, opts: &Options) -> Result<Classification, CliError> {
    opts.check()?;
    let (a, _) = read_matrix(path)?;
    Ok(Classification::from(&classify::classify(&a, opts.tol)?))
}

pub fn cmd_components(path: &Path) -> Result<ComponentSummary, CliError> {
    let (a, _) = read_matrix(path)?;
    component_summary(&a)
}

/// Certifies on scalar input; on non-scalar input only the equality
/// conditions are evaluated (`scalar` is false in the result).
pub fn cmd_certify(
    path: &Path,
    theorem: Theorem,
    s: Option<usize>,
    r: Option<usize>,
    opts: &Options,
) -> Result<EqualityCertificate, CliError> {
    opts.check()?;
    let (a, _) = read_matrix(path)?;
    let tol = opts.tol;
    let scalar = !a.is_zero() && a.detect_scalar(tol).is_scalar;
    let cert = match (theorem, scalar) {
        (Theorem::T2, true) => classify::certify_theorem2(&a, s.unwrap_or(1), r.unwrap_or(0), tol)?,
        (Theorem::T2, false) => classify::evaluate_theorem2(&a, s.unwrap_or(1), r.unwrap_or(0), tol)?,
        (Theorem::T2_1, true) => classify::certify_theorem2_1(&a, r.unwrap_or(1), s.unwrap_or(1), tol)?,
        (Theorem::T2_1, false) => classify::evaluate_theorem2_1(&a, r.unwrap_or(1), s.unwrap_or(1), tol)?,
        (Theorem::T3, true) => classify::certify_theorem3(&a, r.unwrap_or(2), tol, opts.literal_t3ii)?,
        (Theorem::T3, false) => classify::evaluate_theorem3(&a, r.unwrap_or(2), tol, opts.literal_t3ii)?,
        (Theorem::T4, true) => classify::certify_theorem4(&a, tol)?,
        (Theorem::T4, false) => classify::evaluate_theorem4(&a, tol)?,
        (Theorem::Hwh, _) => classify::hwh_equality_certificate(&a, tol)?,
    };
    Ok(cert)
}

/// Generates, certifies and (with `out`) writes a matrix. The format
/// follows the file extension. An uncertified witness is a numerical failure.
pub fn cmd_gen(spec: &GeneratorSpec, out: Option<&Path>) -> Result<(GenReport, String), CliError> {
    let a = gen::generate(spec)?;
    let certified = gen::certify(spec, &a);
    if !certified {
        return Err(CliError::Numerical("generated matrix failed its certificate".into()));
    }
    let format = out.map_or(Format::MatrixMarket, Format::from_path);
    let text = io::write(&a, format);
    if let Some(path) = out {
        fs::write(path, &text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let report = GenReport {
        schema: SCHEMA,
        spec: spec.clone(),
        out: out.map(|p| p.display().to_string()),
        rows: a.rows(),
        cols: a.cols(),
        certified,
    };
    Ok((report, text))
}
