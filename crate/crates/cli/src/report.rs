//! Serializable report types and their text renderings.

use std::fmt::Write as _;

use regmat::bounds::{BoundMethod, BoundReport};
use regmat::classify::{ClassificationReport, ComponentClass, EqualityCertificate};
use regmat::gen::GeneratorSpec;
use regmat::spectral::{SigmaEstimate, SigmaMethod};
use regmat::structure::ComponentDecomposition;
use serde::{Deserialize, Serialize};

use crate::io::Format;

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: String,
    pub format: Format,
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative tolerance for every equality and tightness test.
    pub tol: f64,
    pub power_tol: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaInfo {
    pub value: f64,
    pub method: SigmaMethod,
    /// Power-iteration residual; absent when the Jacobi route was taken.
    pub residual: Option<f64>,
}

impl From<SigmaEstimate> for SigmaInfo {
    fn from(s: SigmaEstimate) -> Self {
        SigmaInfo { value: s.value, method: s.method, residual: s.residual.is_finite().then_some(s.residual) }
    }
}

/// [`ClassificationReport`] without the copy of the matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub is_scalar: bool,
    /// Common phase `[re, im]` of the nonzero entries.
    pub phase: Option<[f64; 2]>,
    pub sigma: f64,
    pub is_regular: bool,
    pub is_pseudo_regular: bool,
    pub pseudo_lambda: Option<f64>,
    pub is_almost_regular: bool,
    pub per_component: Vec<ComponentClass>,
}

impl From<&ClassificationReport> for Classification {
    fn from(c: &ClassificationReport) -> Self {
        Classification {
            is_scalar: c.scalarity.is_scalar,
            phase: c.scalarity.phase.map(|z| [z.re, z.im]),
            sigma: c.sigma,
            is_regular: c.is_regular,
            is_pseudo_regular: c.is_pseudo_regular,
            pseudo_lambda: c.pseudo_lambda,
            is_almost_regular: c.is_almost_regular,
            per_component: c.per_component.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub count: usize,
    pub connected: bool,
    pub components: Vec<ComponentInfo>,
    pub isolated_rows: Vec<usize>,
    pub isolated_cols: Vec<usize>,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

impl ComponentSummary {
    pub fn new(d: &ComponentDecomposition, sigmas: Vec<f64>) -> Self {
        let components = d
            .components
            .iter()
            .zip(sigmas)
            .map(|(c, sigma)| ComponentInfo { rows: c.row_indices.clone(), cols: c.col_indices.clone(), sigma })
            .collect();
        ComponentSummary {
            count: d.components.len(),
            connected: d.components.len() == 1 && d.isolated_rows.is_empty() && d.isolated_cols.is_empty(),
            components,
            isolated_rows: d.isolated_rows.clone(),
            isolated_cols: d.isolated_cols.clone(),
            row_perm: d.row_perm.clone(),
            col_perm: d.col_perm.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub tool_version: String,
    pub input: InputInfo,
    pub tolerances: Tolerances,
    pub sigma: SigmaInfo,
    pub bounds: Vec<BoundReport>,
    pub classification: Option<Classification>,
    pub classification_error: Option<String>,
    pub certificates: Vec<EqualityCertificate>,
    pub components: ComponentSummary,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenReport {
    pub schema: u32,
    pub spec: GeneratorSpec,
    pub out: Option<String>,
    pub rows: usize,
    pub cols: usize,
    pub certified: bool,
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(x: Option<usize>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

fn method_name(m: BoundMethod) -> &'static str {
    match m {
        BoundMethod::WalkBound => "walk",
        BoundMethod::WeightedBound => "weighted",
        BoundMethod::MeanBound => "mean",
        BoundMethod::HwhBound => "hwh",
        BoundMethod::SchurUpper => "schur",
    }
}

pub fn bounds_table(bounds: &[BoundReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<9} {:>3} {:>3} {:>22} {:>12} {:>5}", "method", "p", "r", "value", "gap", "tight");
    for b in bounds {
        let _ = write!(
            out,
            "{:<9} {:>3} {:>3} {:>22.15} {:>12.3e} {:>5}",
            method_name(b.method),
            opt(b.params.p),
            opt(b.params.r),
            b.value,
            b.gap,
            yn(b.tight)
        );
        if let Some(c) = &b.support_certificate {
            let _ = write!(out, "  support d_i*d_j = mu^2: {} (max residual {:.3e})", yn(c.holds), c.max_residual);
        }
        out.push('\n');
    }
    out
}

pub fn classification_text(c: &Classification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scalar:          {}", yn(c.is_scalar));
    let _ = writeln!(out, "sigma:           {:.15}", c.sigma);
    let _ = writeln!(out, "regular:         {}", yn(c.is_regular));
    match c.pseudo_lambda {
        Some(l) => {
            let _ = writeln!(out, "pseudo-regular:  yes (lambda = {l:.15})");
        }
        None => {
            let _ = writeln!(out, "pseudo-regular:  no");
        }
    }
    let _ = writeln!(out, "almost regular:  {}", yn(c.is_almost_regular));
    for (k, comp) in c.per_component.iter().enumerate() {
        let _ = writeln!(
            out,
            "  component {k}: rows {:?} cols {:?} sigma {:.15} regular {}",
            comp.row_indices,
            comp.col_indices,
            comp.sigma,
            yn(comp.regular)
        );
    }
    out
}

pub fn certificate_text(c: &EqualityCertificate) -> String {
    let name = serde_json::to_value(c.theorem).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let mut out = format!(
        "{name:<5} r={:<2} s={:<2} holds {:<3} gap {:.3e} scalar {:<3} implied class verified {}\n",
        opt(c.r),
        opt(c.s),
        yn(c.holds),
        c.gap,
        yn(c.scalar),
        yn(c.implied_class_verified)
    );
    for d in &c.details {
        let gap = d.gap.map_or_else(String::new, |g| format!(" gap {g:.3e}"));
        let _ = writeln!(out, "      {:<13} {}{gap}", d.name, yn(d.holds));
    }
    out
}

pub fn components_text(s: &ComponentSummary) -> String {
    let mut out = format!("components: {} (connected: {})\n", s.count, yn(s.connected));
    for (k, c) in s.components.iter().enumerate() {
        let _ = writeln!(out, "  {k}: rows {:?} cols {:?} sigma {:.15}", c.rows, c.cols, c.sigma);
    }
    if !s.isolated_rows.is_empty() || !s.isolated_cols.is_empty() {
        let _ = writeln!(out, "  zero rows {:?} zero cols {:?}", s.isolated_rows, s.isolated_cols);
    }
    out
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} ({}x{}, {})",
            self.input.path,
            self.input.rows,
            self.input.cols,
            match self.input.format {
                Format::MatrixMarket => "matrix market",
                Format::Csv => "csv",
            }
        );
        let method = match self.sigma.method {
            SigmaMethod::PowerIteration => "power iteration",
            SigmaMethod::JacobiGram => "jacobi",
        };
        let _ = writeln!(out, "sigma = {:.15} ({method})\n", self.sigma.value);
        out.push_str(&bounds_table(&self.bounds));
        out.push('\n');
        match (&self.classification, &self.classification_error) {
            (Some(c), _) => out.push_str(&classification_text(c)),
            (None, Some(e)) => {
                let _ = writeln!(out, "classification: {e}");
            }
            (None, None) => {}
        }
        out.push('\n');
        for c in &self.certificates {
            out.push_str(&certificate_text(c));
        }
        out.push('\n');
        out.push_str(&components_text(&self.components));
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}
