//! Matrix Market reader and writer (`array` and `coordinate` layouts, `real`,
//! `integer` or `complex` fields, `general` symmetry).

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Result, TsteinError};
use crate::matrix::{DenseMatrix, C64};

#[derive(Clone, Copy, PartialEq)]
enum Layout {
    Array,
    Coordinate,
}

fn parse_err(line: usize, message: impl Into<String>) -> TsteinError {
    TsteinError::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a number, found {tok:?}")))
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    read_matrix_from(BufReader::new(File::open(path)?))
}

pub fn read_matrix_from(reader: impl BufRead) -> Result<DenseMatrix> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let header = header?;
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(parse_err(1, "expected '%%MatrixMarket matrix <layout> <field> <symmetry>'"));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(parse_err(1, format!("unsupported layout {other:?}"))),
    };
    let complex = match words[3].as_str() {
        "real" | "integer" => false,
        "complex" => true,
        other => return Err(parse_err(1, format!("unsupported field {other:?}"))),
    };
    if words[4] != "general" {
        return Err(parse_err(1, format!("unsupported symmetry {:?}", words[4])));
    }

    let mut body = Vec::new();
    for (no, line) in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        body.push((no, t.to_string()));
    }
    let mut body = body.into_iter();
    let (size_no, size_line) = body.next().ok_or_else(|| parse_err(1, "missing size line"))?;
    let dims: Vec<&str> = size_line.split_whitespace().collect();
    let expected = if layout == Layout::Array { 2 } else { 3 };
    if dims.len() != expected {
        return Err(parse_err(size_no, format!("size line needs {expected} integers")));
    }
    let rows: usize = number(dims[0], size_no)?;
    let cols: usize = number(dims[1], size_no)?;
    let mut m = DenseMatrix::zeros(rows, cols);
    let value_tokens = if complex { 2 } else { 1 };
    let value = |toks: &[&str], no: usize| -> Result<C64> {
        let re: f64 = number(toks[0], no)?;
        let im: f64 = if complex { number(toks[1], no)? } else { 0.0 };
        Ok(C64::new(re, im))
    };

    let mut last = size_no;
    match layout {
        Layout::Array => {
            // column-major
            let total = rows * cols;
            let mut k = 0;
            for (no, line) in body {
                last = no;
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != value_tokens {
                    return Err(parse_err(no, format!("expected {value_tokens} value token(s)")));
                }
                if k == total {
                    return Err(parse_err(no, format!("more than the declared {total} entries")));
                }
                m[(k % rows, k / rows)] = value(&toks, no)?;
                k += 1;
            }
            if k != total {
                return Err(parse_err(last, format!("found {k} entries, declared {total}")));
            }
        }
        Layout::Coordinate => {
            let nnz: usize = number(dims[2], size_no)?;
            let mut k = 0;
            for (no, line) in body {
                last = no;
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 + value_tokens {
                    return Err(parse_err(no, format!("expected row, column and {value_tokens} value token(s)")));
                }
                if k == nnz {
                    return Err(parse_err(no, format!("more than the declared {nnz} entries")));
                }
                let i: usize = number(toks[0], no)?;
                let j: usize = number(toks[1], no)?;
                if i == 0 || j == 0 || i > rows || j > cols {
                    return Err(parse_err(no, format!("index ({i}, {j}) outside {rows}x{cols}")));
                }
                // repeated coordinates accumulate
                m[(i - 1, j - 1)] += value(&toks[2..], no)?;
                k += 1;
            }
            if k != nnz {
                return Err(parse_err(last, format!("found {k} entries, declared {nnz}")));
            }
        }
    }
    Ok(m)
}

/// Writes `m` in array layout; `real` when every imaginary part is zero.
pub fn write_matrix(path: impl AsRef<Path>, m: &DenseMatrix) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix_to(&mut w, m)?;
    w.flush()?;
    Ok(())
}

pub fn write_matrix_to(w: &mut impl Write, m: &DenseMatrix) -> Result<()> {
    let real = m.is_real(0.0);
    writeln!(
        w,
        "%%MatrixMarket matrix array {} general",
        if real { "real" } else { "complex" }
    )?;
    writeln!(w, "{} {}", m.rows(), m.cols())?;
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let z = m[(i, j)];
            if real {
                writeln!(w, "{:.16e}", z.re)?;
            } else {
                writeln!(w, "{:.16e} {:.16e}", z.re, z.im)?;
            }
        }
    }
    Ok(())
}
