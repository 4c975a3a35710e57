//! Matrix Market reading and writing for dense complex matrices.
//!
//! Two layouts are accepted, both with field `complex` and symmetry
//! `general`: `array` (dense, column-major entries, one `re im` pair per
//! line) and `coordinate` (1-based `i j re im` lines, unlisted entries
//! zero). The writer always produces the array layout with round-trip
//! exact floating-point text.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use sylvkit_core::ComplexMatrix;

use crate::error::{CliError, Result};

/// Largest accepted row or column count unless SYLVKIT_MAX_DIM says more.
const DEFAULT_MAX_DIM: usize = 256;

pub fn max_dim() -> Result<usize> {
    match std::env::var("SYLVKIT_MAX_DIM") {
        Err(_) => Ok(DEFAULT_MAX_DIM),
        Ok(raw) => raw.trim().parse::<usize>().ok().filter(|&v| v > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "SYLVKIT_MAX_DIM must be a positive integer, got {raw:?}"
            ))
        }),
    }
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix_market(&text, path)
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn parse_f64(tok: &str, path: &Path, line: usize) -> Result<f64> {
    let value: f64 = tok
        .parse()
        .map_err(|_| parse_err(path, line, format!("expected a real number, got {tok:?}")))?;
    if !value.is_finite() {
        return Err(parse_err(path, line, format!("non-finite value {tok:?}")));
    }
    Ok(value)
}

fn parse_dim(tok: &str, cap: usize, path: &Path, line: usize) -> Result<usize> {
    let value: usize = tok
        .parse()
        .map_err(|_| parse_err(path, line, format!("expected a dimension, got {tok:?}")))?;
    if value == 0 {
        return Err(parse_err(path, line, "zero dimension"));
    }
    if value > cap {
        return Err(parse_err(
            path,
            line,
            format!("dimension {value} exceeds the cap of {cap} (set SYLVKIT_MAX_DIM to raise it)"),
        ));
    }
    Ok(value)
}

pub fn parse_matrix_market(text: &str, path: &Path) -> Result<ComplexMatrix> {
    let cap = max_dim()?;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "empty file"))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_lowercase).collect();
    if tokens.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(parse_err(path, header_no, "missing %%MatrixMarket banner"));
    }
    if tokens.len() != 5 {
        return Err(parse_err(
            path,
            header_no,
            "banner must read: %%MatrixMarket matrix <array|coordinate> complex general",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(CliError::UnsupportedFormat {
            path: path.to_path_buf(),
            field: tokens[1].clone(),
        });
    }
    let dense = match tokens[2].as_str() {
        "array" => true,
        "coordinate" => false,
        other => {
            return Err(CliError::UnsupportedFormat {
                path: path.to_path_buf(),
                field: other.to_string(),
            })
        }
    };
    if tokens[3] != "complex" || tokens[4] != "general" {
        let field = if tokens[3] != "complex" {
            tokens[3].clone()
        } else {
            tokens[4].clone()
        };
        return Err(CliError::UnsupportedFormat {
            path: path.to_path_buf(),
            field,
        });
    }

    let mut content = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });

    let (size_no, size_line) = content
        .next()
        .ok_or_else(|| parse_err(path, 1, "missing size line"))?;
    let size_tokens: Vec<&str> = size_line.split_whitespace().collect();

    if dense {
        if size_tokens.len() != 2 {
            return Err(parse_err(path, size_no, "array size line needs: rows cols"));
        }
        let rows = parse_dim(size_tokens[0], cap, path, size_no)?;
        let cols = parse_dim(size_tokens[1], cap, path, size_no)?;
        let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (k, slot) in entries.iter_mut().enumerate() {
            let (no, line) = content
                .next()
                .ok_or_else(|| parse_err(path, size_no, format!(
                    "expected {} entries, file ended after {k}",
                    rows * cols
                )))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(parse_err(path, no, "array entry needs: re im"));
            }
            let re = parse_f64(toks[0], path, no)?;
            let im = parse_f64(toks[1], path, no)?;
            *slot = Complex64::new(re, im);
        }
        if let Some((no, _)) = content.next() {
            return Err(parse_err(path, no, "data after the final entry"));
        }
        // Column-major per the array convention.
        let m = ComplexMatrix::from_fn(rows, cols, |i, j| entries[j * rows + i]);
        Ok(m)
    } else {
        if size_tokens.len() != 3 {
            return Err(parse_err(
                path,
                size_no,
                "coordinate size line needs: rows cols nnz",
            ));
        }
        let rows = parse_dim(size_tokens[0], cap, path, size_no)?;
        let cols = parse_dim(size_tokens[1], cap, path, size_no)?;
        let nnz: usize = size_tokens[2]
            .parse()
            .map_err(|_| parse_err(path, size_no, "bad entry count"))?;
        let mut m = ComplexMatrix::zeros(rows, cols);
        let mut seen = vec![false; rows * cols];
        for _ in 0..nnz {
            let (no, line) = content
                .next()
                .ok_or_else(|| parse_err(path, size_no, format!("expected {nnz} entries")))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(parse_err(path, no, "coordinate entry needs: i j re im"));
            }
            let i: usize = toks[0]
                .parse()
                .map_err(|_| parse_err(path, no, "bad row index"))?;
            let j: usize = toks[1]
                .parse()
                .map_err(|_| parse_err(path, no, "bad column index"))?;
            if i == 0 || i > rows || j == 0 || j > cols {
                return Err(parse_err(path, no, format!(
                    "index ({i}, {j}) outside {rows}x{cols} (indices are 1-based)"
                )));
            }
            if seen[(i - 1) * cols + (j - 1)] {
                return Err(parse_err(path, no, format!("duplicate entry ({i}, {j})")));
            }
            seen[(i - 1) * cols + (j - 1)] = true;
            let re = parse_f64(toks[2], path, no)?;
            let im = parse_f64(toks[3], path, no)?;
            m[(i - 1, j - 1)] = Complex64::new(re, im);
        }
        if let Some((no, _)) = content.next() {
            return Err(parse_err(path, no, "data after the final entry"));
        }
        Ok(m)
    }
}

/// Array-layout text whose floating-point fields parse back bit-exact.
pub fn write_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::from("%%MatrixMarket matrix array complex general\n");
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let z = m[(i, j)];
            out.push_str(&format!("{} {}\n", z.re, z.im));
        }
    }
    out
}

pub fn write_matrix_file(path: &Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, write_matrix(m)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Resolve `relative` against the directory holding `anchor`.
pub fn sibling_path(anchor: &Path, relative: &str) -> PathBuf {
    let rel = Path::new(relative);
    if rel.is_absolute() {
        rel.to_path_buf()
    } else {
        anchor.parent().unwrap_or_else(|| Path::new(".")).join(rel)
    }
}
