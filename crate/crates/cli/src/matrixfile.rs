//! Matrix text files: a `rows cols` header, then one line per row.

use std::path::Path;

use linesand::IntMatrix;
use num_bigint::BigInt;

use crate::error::CliError;

pub fn parse_matrix(text: &str, source: &str) -> Result<IntMatrix, CliError> {
    let err = |line: usize, message: String| CliError::Parse {
        file: source.to_string(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `rows cols` header".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|e| err(hline, format!("bad header: {e}")))?;
    let [rows, cols] = dims[..] else {
        return Err(err(hline, format!("header needs 2 numbers, found {}", dims.len())));
    };

    let mut entries = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| err(hline + r + 1, format!("expected {rows} rows, found {r}")))?;
        let row: Vec<BigInt> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| err(lno, format!("bad integer: {e}")))?;
        if row.len() != cols {
            return Err(err(lno, format!("expected {cols} entries, found {}", row.len())));
        }
        entries.extend(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(err(lno, "trailing content after last row".into()));
    }
    Ok(IntMatrix::from_entries(rows, cols, entries)?)
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_matrix(&text, &path.display().to_string())
}
