//! Plain-text matrix format.
//!
//! ```text
//! # comment
//! 3 2
//! 1 2
//! 3 3
//! 2 1
//! ```
//! The first non-comment line holds the dimensions, then one line per row.
//! Values are written with 17 significant digits so a round trip is lossless.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::{Matrix, Scalar};

pub fn parse_matrix<T: Scalar>(text: &str) -> Result<Matrix<T>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "missing dimension line".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            line: line_no,
            message: format!("bad dimension line {header:?}: {e}"),
        })?;
    let [m, n] = dims[..] else {
        return Err(Error::Parse {
            line: line_no,
            message: format!("expected \"m n\", found {header:?}"),
        });
    };
    if m == 0 || n == 0 {
        return Err(Error::Parse {
            line: line_no,
            message: "dimensions must be positive".into(),
        });
    }

    let mut data = Vec::with_capacity(m * n);
    for r in 0..m {
        let (line_no, row) = lines.next().ok_or(Error::Parse {
            line: line_no,
            message: format!("expected {m} rows, found {r}"),
        })?;
        let before = data.len();
        for tok in row.split_whitespace() {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not a number: {tok:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("non-finite value {tok:?}"),
                });
            }
            data.push(T::lit(v));
        }
        if data.len() - before != n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {n} values, found {}", data.len() - before),
            });
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            message: format!("unexpected data after {m} rows"),
        });
    }
    Matrix::from_vec(m, n, data)
}

pub fn format_matrix<T: Scalar>(a: &Matrix<T>) -> String {
    let mut s = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a
            .row(i)
            .iter()
            .map(|v| format!("{:.16e}", v.to_f64_lossy()))
            .collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn read_matrix<T: Scalar>(path: &Path) -> Result<Matrix<T>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn write_matrix<T: Scalar>(path: &Path, a: &Matrix<T>) -> Result<()> {
    std::fs::write(path, format_matrix(a)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
