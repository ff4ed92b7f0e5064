//! Commands behind the `mopdom` binary. Each writes to a caller-supplied sink
//! so it can be driven from tests as well as from `main`.

pub mod commands;
pub mod record;
pub mod stats;
pub mod tight;

use std::fmt;
use std::io::Read;

use mopdom_core::format::{parse_records, Record};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INVALID: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const TOO_LARGE: u8 = 3;
    pub const RANGE: u8 = 4;
}

/// An error carrying the exit code it should produce.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Failure {}

/// Reads a path, or standard input for `-`.
pub fn read_text(path: &str) -> anyhow::Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::new(exit::PARSE, format!("{path}: {e}")))?;
    }
    Ok(text)
}

pub fn parse(text: &str) -> Result<Vec<Record>, Failure> {
    parse_records(text).map_err(|e| Failure::new(exit::PARSE, e.to_string()))
}

/// Fails with exit code 1 on the first record that is not a mop.
pub fn require_valid(records: &[Record]) -> Result<(), Failure> {
    for (i, r) in records.iter().enumerate() {
        let report = r.mop.validate();
        if !report.is_valid() {
            return Err(Failure::new(exit::INVALID, format!("record {} (line {}): {report}", i + 1, r.line)));
        }
    }
    Ok(())
}

/// Runs `f` on every item with `jobs` workers (0 = one per core), keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| items.par_iter().map(f).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_keeps_input_order() {
        let items: Vec<usize> = (0..1000).collect();
        assert_eq!(par_map(&items, 4, |x| x * 2), items.iter().map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn invalid_records_name_their_line() {
        let recs = parse("5\n0 2\n0 3\n\n4\n0 2\n1 3\n").unwrap();
        let f = require_valid(&recs).unwrap_err();
        assert_eq!(f.code, exit::INVALID);
        assert!(f.message.starts_with("record 2 (line 5)"));
        assert_eq!(parse("x\n").unwrap_err().code, exit::PARSE);
    }
}
