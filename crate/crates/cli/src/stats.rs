//! Per-order CSV aggregates.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use mopdom_core::bound;
use mopdom_core::generators::enumerate_triangulations;
use mopdom_core::solvers::exact_2dd;

use crate::record::ResultRecord;
use crate::{exit, par_map, Failure};

/// Column order of the CSV output.
pub const HEADER: [&str; 10] = [
    "n",
    "instances",
    "mean_gamma2d",
    "max_gamma2d",
    "mean_k",
    "min_k",
    "max_k",
    "k_hist",
    "internal_hist",
    "slack_hist",
];

/// One sample: order, degree-2 count and (when known) the exact value.
pub type Sample = (usize, usize, Option<usize>);

fn hist(values: impl Iterator<Item = usize>) -> String {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v).or_insert(0usize) += 1;
    }
    h.iter().map(|(v, c)| format!("{v}:{c}")).collect::<Vec<_>>().join(";")
}

fn mean(values: &[usize]) -> String {
    if values.is_empty() {
        return String::new();
    }
    format!("{:.6}", values.iter().sum::<usize>() as f64 / values.len() as f64)
}

pub fn write_csv(samples: &[Sample], out: &mut dyn Write) -> Result<()> {
    let mut by_n: BTreeMap<usize, Vec<(usize, Option<usize>)>> = BTreeMap::new();
    for &(n, k, g) in samples {
        by_n.entry(n).or_default().push((k, g));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for (n, rows) in by_n {
        let ks: Vec<usize> = rows.iter().map(|r| r.0).collect();
        let exact: Vec<(usize, usize)> = rows.iter().filter_map(|&(k, g)| g.map(|g| (k, g))).collect();
        let gs: Vec<usize> = exact.iter().map(|e| e.1).collect();
        let complete = exact.len() == rows.len();
        let or_blank = |s: String| if complete { s } else { String::new() };
        w.write_record([
            n.to_string(),
            rows.len().to_string(),
            or_blank(mean(&gs)),
            or_blank(gs.iter().max().map(|g| g.to_string()).unwrap_or_default()),
            mean(&ks),
            ks.iter().min().unwrap().to_string(),
            ks.iter().max().unwrap().to_string(),
            hist(ks.iter().copied()),
            hist(ks.iter().map(|k| k - 2)),
            or_blank(hist(exact.iter().map(|&(k, g)| bound(n, k) - g))),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Samples from `exact` (or `bound`) JSONL output.
pub fn samples_from_jsonl(text: &str) -> Result<Vec<Sample>, Failure> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let r: ResultRecord =
            serde_json::from_str(line).map_err(|e| Failure::new(exit::PARSE, format!("line {}: {e}", i + 1)))?;
        out.push((r.n, r.k, r.gamma2d));
    }
    Ok(out)
}

/// Samples for every triangulation of each order, solved exactly.
pub fn samples_from_enumeration(from: usize, to: usize, jobs: usize) -> Result<Vec<Sample>, Failure> {
    if from <= to && (from < 3 || to > 12) {
        return Err(Failure::new(exit::RANGE, "exact statistics need orders in 3..=12"));
    }
    let mut out = Vec::new();
    for n in from..=to {
        let mops: Vec<_> = enumerate_triangulations(n).collect();
        out.extend(par_map(&mops, jobs, |m| (n, m.degree_two_count(), Some(exact_2dd(m).expect("small order").size))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_and_mean_formatting() {
        assert_eq!(hist([3, 2, 3].into_iter()), "2:1;3:2");
        assert_eq!(mean(&[1, 2]), "1.500000");
        assert_eq!(mean(&[]), "");
    }

    #[test]
    fn missing_exact_values_blank_the_exact_columns() {
        let mut out = Vec::new();
        write_csv(&[(9, 2, Some(2)), (9, 3, None)], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "9,2,,,2.500000,2,3,2:1;3:1,0:1;1:1,");
    }
}
