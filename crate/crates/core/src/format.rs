//! Plain-text mop records.
//!
//! ```text
//! # optional comment
//! 6
//! 0 2
//! 0 3
//! 0 4
//!
//! ```
//! A record is `n` followed by one `a b` line per diagonal; a blank line or
//! end of input closes it.

use std::fmt::Write as _;

use thiserror::Error;

use crate::mop::{Diagonal, Mop};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// A parsed record. The mop is not validated; `line` is where it starts.
#[derive(Debug, Clone)]
pub struct Record {
    pub line: usize,
    pub mop: Mop,
}

pub fn parse_records(text: &str) -> Result<Vec<Record>, ParseError> {
    let mut out = Vec::new();
    // (start line, n, diagonals) of the record being read
    let mut current: Option<(usize, usize, Vec<Diagonal>)> = None;
    let err = |line: usize, message: String| ParseError { line, message };
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if let Some((start, n, diags)) = current.take() {
                out.push(Record { line: start, mop: Mop::from_raw(n, diags) });
            }
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse = |t: &str| {
            t.parse::<usize>().map_err(|_| err(line_no, format!("expected a non-negative integer, found {t:?}")))
        };
        match current.as_mut() {
            None => {
                if tokens.len() != 1 {
                    return Err(err(line_no, format!("expected vertex count, found {line:?}")));
                }
                current = Some((line_no, parse(tokens[0])?, Vec::new()));
            }
            Some((_, _, diags)) => {
                if tokens.len() != 2 {
                    return Err(err(line_no, format!("expected \"a b\", found {line:?}")));
                }
                diags.push((parse(tokens[0])?, parse(tokens[1])?));
            }
        }
    }
    if let Some((start, n, diags)) = current {
        out.push(Record { line: start, mop: Mop::from_raw(n, diags) });
    }
    Ok(out)
}

/// Writes one record followed by its terminating blank line.
pub fn write_record(m: &Mop) -> String {
    let mut s = String::new();
    writeln!(s, "{}", m.n()).unwrap();
    for &(a, b) in m.diagonals() {
        writeln!(s, "{a} {b}").unwrap();
    }
    s.push('\n');
    s
}

pub fn write_records<'a>(mops: impl IntoIterator<Item = &'a Mop>) -> String {
    mops.into_iter().map(write_record).collect()
}
