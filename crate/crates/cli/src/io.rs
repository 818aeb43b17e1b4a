//! Matrix Market and CSV readers and writers.
//!
//! Both writers print every value with Rust's shortest round-trip float
//! formatting, so `read(write(a)) == a` bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use regmat::DenseMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unsupported Matrix Market header: {0}")]
    Header(String),
    #[error("{0}")]
    Shape(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    MatrixMarket,
    Csv,
}

impl Format {
    /// `.csv` is CSV, anything else is read as Matrix Market.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::MatrixMarket,
        }
    }
}

pub fn parse(text: &str, format: Format) -> Result<DenseMatrix, FormatError> {
    match format {
        Format::MatrixMarket => parse_matrix_market(text),
        Format::Csv => parse_csv(text),
    }
}

pub fn write(a: &DenseMatrix, format: Format) -> String {
    match format {
        Format::MatrixMarket => write_matrix_market(a),
        Format::Csv => write_csv(a),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Array,
    Coordinate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Complex,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

impl Symmetry {
    /// The entry mirrored to `(j, i)` from a stored `(i, j)`.
    fn mirror(self, z: Complex64) -> Complex64 {
        match self {
            Symmetry::General | Symmetry::Symmetric => z,
            Symmetry::SkewSymmetric => -z,
            Symmetry::Hermitian => z.conj(),
        }
    }
}

fn parse_header(line: &str) -> Result<(Layout, Field, Symmetry), FormatError> {
    let words: Vec<String> = line.split_whitespace().map(|w| w.to_ascii_lowercase()).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(FormatError::Header(line.trim().to_string()));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        _ => return Err(FormatError::Header(line.trim().to_string())),
    };
    let field = match words[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "complex" => Field::Complex,
        "pattern" if layout == Layout::Coordinate => Field::Pattern,
        _ => return Err(FormatError::Header(line.trim().to_string())),
    };
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        "hermitian" if field == Field::Complex => Symmetry::Hermitian,
        _ => return Err(FormatError::Header(line.trim().to_string())),
    };
    Ok((layout, field, symmetry))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| syntax(line, format!("expected a nonnegative integer, got `{tok}`")))
}

fn parse_f64(tok: &str, line: usize) -> Result<f64, FormatError> {
    let v: f64 = tok.parse().map_err(|_| syntax(line, format!("expected a number, got `{tok}`")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(syntax(line, format!("non-finite value `{tok}`")))
    }
}

fn parse_value<'a>(
    field: Field,
    toks: &mut impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<Complex64, FormatError> {
    let mut next = || toks.next().ok_or_else(|| syntax(line, "missing value"));
    match field {
        Field::Pattern => Ok(Complex64::new(1.0, 0.0)),
        Field::Integer => {
            let tok = next()?;
            let v: i64 = tok.parse().map_err(|_| syntax(line, format!("expected an integer, got `{tok}`")))?;
            Ok(Complex64::new(v as f64, 0.0))
        }
        Field::Real => Ok(Complex64::new(parse_f64(next()?, line)?, 0.0)),
        Field::Complex => {
            let re = parse_f64(next()?, line)?;
            let im = parse_f64(next()?, line)?;
            Ok(Complex64::new(re, im))
        }
    }
}

pub fn parse_matrix_market(text: &str) -> Result<DenseMatrix, FormatError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let (layout, field, symmetry) = parse_header(header)?;
    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_line, size) = body.next().ok_or_else(|| syntax(1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    let expected = if layout == Layout::Array { 2 } else { 3 };
    if dims.len() != expected {
        return Err(syntax(size_line, format!("size line needs {expected} integers")));
    }
    let m = parse_usize(dims[0], size_line)?;
    let n = parse_usize(dims[1], size_line)?;
    if symmetry != Symmetry::General && m != n {
        return Err(FormatError::Shape(format!("symmetric storage needs a square matrix, got {m}x{n}")));
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); m * n];
    let mut store = |i: usize, j: usize, z: Complex64| {
        entries[i * n + j] = z;
        if symmetry != Symmetry::General && i != j {
            entries[j * n + i] = symmetry.mirror(z);
        }
    };

    match layout {
        Layout::Array => {
            // Column-major; symmetric storage lists the lower triangle only
            // (skew-symmetric omits the diagonal too).
            let mut slots = Vec::new();
            for j in 0..n {
                let start = match symmetry {
                    Symmetry::General => 0,
                    Symmetry::SkewSymmetric => j + 1,
                    _ => j,
                };
                slots.extend((start..m).map(|i| (i, j)));
            }
            let mut slot = slots.into_iter();
            let mut last_line = size_line;
            for (ln, l) in body {
                last_line = ln;
                let mut toks = l.split_whitespace();
                let z = parse_value(field, &mut toks, ln)?;
                if toks.next().is_some() {
                    return Err(syntax(ln, "trailing tokens"));
                }
                let (i, j) = slot.next().ok_or_else(|| syntax(ln, "more values than the size line allows"))?;
                store(i, j, z);
            }
            if slot.next().is_some() {
                return Err(syntax(last_line, "fewer values than the size line requires"));
            }
        }
        Layout::Coordinate => {
            let nnz = parse_usize(dims[2], size_line)?;
            let mut count = 0;
            for (ln, l) in body {
                let mut toks = l.split_whitespace();
                let i = parse_usize(toks.next().unwrap_or(""), ln)?;
                let j = parse_usize(toks.next().ok_or_else(|| syntax(ln, "missing column index"))?, ln)?;
                if i == 0 || j == 0 || i > m || j > n {
                    return Err(syntax(ln, format!("index ({i}, {j}) outside {m}x{n}")));
                }
                let z = parse_value(field, &mut toks, ln)?;
                if toks.next().is_some() {
                    return Err(syntax(ln, "trailing tokens"));
                }
                store(i - 1, j - 1, z);
                count += 1;
            }
            if count != nnz {
                return Err(FormatError::Shape(format!("size line announces {nnz} entries, found {count}")));
            }
        }
    }
    DenseMatrix::new(m, n, entries).map_err(|e| FormatError::Shape(e.to_string()))
}

/// Array format, column-major, `real` when every imaginary part is zero
/// and `complex` otherwise.
pub fn write_matrix_market(a: &DenseMatrix) -> String {
    let real = a.is_real();
    let mut out = String::new();
    let field = if real { "real" } else { "complex" };
    let _ = writeln!(out, "%%MatrixMarket matrix array {field} general");
    let _ = writeln!(out, "{} {}", a.rows(), a.cols());
    for j in 0..a.cols() {
        for i in 0..a.rows() {
            let z = a.get(i, j);
            if real {
                let _ = writeln!(out, "{}", z.re);
            } else {
                let _ = writeln!(out, "{} {}", z.re, z.im);
            }
        }
    }
    out
}

/// Parses `a`, `bi`, `a+bi` or `a - bi` (spaces allowed, `j` accepted for `i`).
pub fn parse_complex_literal(s: &str) -> Option<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    let finite = |x: f64| x.is_finite().then_some(x);
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return finite(t.parse().ok()?).map(|re| Complex64::new(re, 0.0));
    };
    // The split is the last sign that does not belong to an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |part: &str| -> Option<f64> {
        match part {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            p => finite(p.parse().ok()?),
        }
    };
    match split {
        Some(k) => Some(Complex64::new(finite(body[..k].parse().ok()?)?, imag(&body[k..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 && !z.im.is_sign_negative() {
        format!("{}", z.re)
    } else if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

pub fn parse_csv(text: &str) -> Result<DenseMatrix, FormatError> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let row = t
            .split(',')
            .map(|cell| parse_complex_literal(cell).ok_or_else(|| syntax(k + 1, format!("bad entry `{}`", cell.trim()))))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(syntax(k + 1, format!("expected {} entries, found {}", first.len(), row.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(syntax(1, "no rows"));
    }
    DenseMatrix::from_rows(&rows).map_err(|e| FormatError::Shape(e.to_string()))
}

pub fn write_csv(a: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.rows() {
        let cells: Vec<String> = a.row(i).iter().map(|&z| format_complex(z)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
