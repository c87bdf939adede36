//! Matrix Market reader and writer (real matrices, coordinate and array formats).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rhqr_core::la::CscMatrix;
use rhqr_core::DenseMatrix;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MmError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T, MmError> {
    Err(MmError::Parse { line, msg: msg.into() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmFormat {
    Coordinate,
    Array,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MmSymmetry {
    General,
    Symmetric,
}

/// A parsed matrix: coordinate files become sparse, array files dense.
#[derive(Clone, Debug)]
pub enum MmMatrix {
    Dense(DenseMatrix),
    Sparse(CscMatrix),
}

impl MmMatrix {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            MmMatrix::Dense(d) => d.shape(),
            MmMatrix::Sparse(s) => (s.rows(), s.cols()),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            MmMatrix::Dense(d) => d.clone(),
            MmMatrix::Sparse(s) => s.to_dense(),
        }
    }
}

fn parse_header(line: &str) -> Result<(MmFormat, MmSymmetry), MmError> {
    let toks: Vec<String> = line.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if toks.len() != 5 || toks[0] != "%%matrixmarket" {
        return perr(1, "expected '%%MatrixMarket matrix <format> real <symmetry>'");
    }
    if toks[1] != "matrix" {
        return perr(1, format!("unsupported object '{}'", toks[1]));
    }
    let format = match toks[2].as_str() {
        "coordinate" => MmFormat::Coordinate,
        "array" => MmFormat::Array,
        other => return perr(1, format!("unsupported format '{other}'")),
    };
    match toks[3].as_str() {
        "real" | "double" | "integer" => {}
        other => return perr(1, format!("unsupported field '{other}', only real matrices are read")),
    }
    let sym = match toks[4].as_str() {
        "general" => MmSymmetry::General,
        "symmetric" => MmSymmetry::Symmetric,
        other => return perr(1, format!("unsupported symmetry '{other}'")),
    };
    Ok((format, sym))
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, MmError> {
    match tok {
        Some(t) => t.parse().or_else(|_| perr(line, format!("invalid {what} '{t}'"))),
        None => perr(line, format!("missing {what}")),
    }
}

fn parse_f64(tok: Option<&str>, line: usize) -> Result<f64, MmError> {
    match tok {
        Some(t) => t.parse().or_else(|_| perr(line, format!("invalid value '{t}'"))),
        None => perr(line, "missing value"),
    }
}

/// Parse Matrix Market text.
pub fn parse_matrix_market(text: &str) -> Result<MmMatrix, MmError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (format, sym) = match lines.next() {
        Some((_, l)) => parse_header(l)?,
        None => return perr(1, "empty file"),
    };
    // skip comments and blank lines
    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = match data.next() {
        Some(x) => x,
        None => return perr(1, "missing size line"),
    };
    let mut it = size.split_whitespace();
    let rows = parse_usize(it.next(), size_line, "row count")?;
    let cols = parse_usize(it.next(), size_line, "column count")?;
    if sym == MmSymmetry::Symmetric && rows != cols {
        return perr(size_line, "symmetric matrix must be square");
    }
    match format {
        MmFormat::Coordinate => {
            let nnz = parse_usize(it.next(), size_line, "entry count")?;
            if it.next().is_some() {
                return perr(size_line, "trailing tokens on size line");
            }
            let mut trip = Vec::with_capacity(if sym == MmSymmetry::Symmetric { 2 * nnz } else { nnz });
            let mut last_line = size_line;
            for _ in 0..nnz {
                let (ln, l) = match data.next() {
                    Some(x) => x,
                    None => return perr(last_line + 1, format!("expected {nnz} entries, file ended early")),
                };
                last_line = ln;
                let mut t = l.split_whitespace();
                let i = parse_usize(t.next(), ln, "row index")?;
                let j = parse_usize(t.next(), ln, "column index")?;
                let v = parse_f64(t.next(), ln)?;
                if t.next().is_some() {
                    return perr(ln, "trailing tokens after entry");
                }
                if i == 0 || i > rows || j == 0 || j > cols {
                    return perr(ln, format!("index ({i}, {j}) outside a {rows}x{cols} matrix"));
                }
                if sym == MmSymmetry::Symmetric && j > i {
                    return perr(ln, format!("entry ({i}, {j}) above the diagonal in symmetric storage"));
                }
                trip.push((i - 1, j - 1, v));
                if sym == MmSymmetry::Symmetric && i != j {
                    trip.push((j - 1, i - 1, v));
                }
            }
            if let Some((ln, _)) = data.next() {
                return perr(ln, "more entries than declared");
            }
            let m = CscMatrix::from_triplets(rows, cols, &trip).map_err(|e| MmError::Parse { line: size_line, msg: e.to_string() })?;
            Ok(MmMatrix::Sparse(m))
        }
        MmFormat::Array => {
            if it.next().is_some() {
                return perr(size_line, "trailing tokens on size line");
            }
            let mut d = DenseMatrix::zeros(rows, cols);
            // column-major; symmetric arrays list the lower triangle only
            let mut slots = Vec::new();
            for j in 0..cols {
                let start = if sym == MmSymmetry::Symmetric { j } else { 0 };
                for i in start..rows {
                    slots.push((i, j));
                }
            }
            let mut last_line = size_line;
            for &(i, j) in &slots {
                let (ln, l) = match data.next() {
                    Some(x) => x,
                    None => return perr(last_line + 1, format!("expected {} values, file ended early", slots.len())),
                };
                last_line = ln;
                let mut t = l.split_whitespace();
                let v = parse_f64(t.next(), ln)?;
                if t.next().is_some() {
                    return perr(ln, "array format expects one value per line");
                }
                d.set(i, j, v);
                if sym == MmSymmetry::Symmetric {
                    d.set(j, i, v);
                }
            }
            if let Some((ln, _)) = data.next() {
                return perr(ln, "more values than declared");
            }
            Ok(MmMatrix::Dense(d))
        }
    }
}

pub fn read_matrix_market(path: &Path) -> Result<MmMatrix, MmError> {
    parse_matrix_market(&fs::read_to_string(path)?)
}

/// Shortest round-trip representation of `v`.
fn fmt_value(v: f64) -> String {
    format!("{v:e}")
}

/// Dense matrix as array-format text (general, column-major).
pub fn format_array(m: &DenseMatrix) -> String {
    let mut s = String::with_capacity(m.rows() * m.cols() * 24 + 64);
    s.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(s, "{} {}", m.rows(), m.cols());
    for j in 0..m.cols() {
        for &v in m.col(j) {
            s.push_str(&fmt_value(v));
            s.push('\n');
        }
    }
    s
}

/// Sparse matrix as coordinate-format text (general, one-based).
pub fn format_coordinate(m: &CscMatrix) -> String {
    let mut s = String::new();
    s.push_str("%%MatrixMarket matrix coordinate real general\n");
    let _ = writeln!(s, "{} {} {}", m.rows(), m.cols(), m.nnz());
    for j in 0..m.cols() {
        for (i, v) in m.column(j) {
            let _ = writeln!(s, "{} {} {}", i + 1, j + 1, fmt_value(v));
        }
    }
    s
}

pub fn write_matrix_market(path: &Path, m: &MmMatrix) -> Result<(), MmError> {
    let text = match m {
        MmMatrix::Dense(d) => format_array(d),
        MmMatrix::Sparse(s) => format_coordinate(s),
    };
    fs::write(path, text)?;
    Ok(())
}
