//! Search for mops whose disjunctive domination number meets the bound.

use mopdom_core::generators::{enumerate_canonical, RandomMops};
use mopdom_core::solvers::exact_2dd;
use mopdom_core::{bound, Mop};

use crate::{exit, par_map, Failure};

#[derive(Debug, Clone)]
pub struct TightOptions {
    pub from: usize,
    pub to: usize,
    /// Orders scanned past `to` when the range holds no witness.
    pub extend_to: usize,
    /// Random mops per order instead of canonical enumeration.
    pub samples: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
}

#[derive(Debug, Clone)]
pub struct TightRow {
    pub n: usize,
    pub instances: usize,
    pub witnesses: Vec<Mop>,
}

#[derive(Debug, Clone, Default)]
pub struct TightReport {
    pub rows: Vec<TightRow>,
    pub extended: bool,
}

impl TightReport {
    pub fn witness_count(&self) -> usize {
        self.rows.iter().map(|r| r.witnesses.len()).sum()
    }
}

fn scan(n: usize, opts: &TightOptions) -> TightRow {
    let mops: Vec<Mop> = match opts.samples {
        Some(s) => {
            let mut gen = RandomMops::new(n, opts.seed ^ n as u64);
            (0..s).map(|_| gen.sample()).collect()
        }
        None => enumerate_canonical(n),
    };
    let tight = par_map(&mops, opts.jobs, |m| {
        let s = exact_2dd(m).expect("order within exact range");
        s.size == bound(n, m.degree_two_count())
    });
    let witnesses = mops.iter().zip(tight).filter(|(_, t)| *t).map(|(m, _)| m.clone()).collect();
    TightRow { n, instances: mops.len(), witnesses }
}

pub fn search_tight(opts: &TightOptions) -> Result<TightReport, Failure> {
    let max = if opts.samples.is_some() { 20 } else { 16 };
    if opts.from <= opts.to.max(opts.extend_to) && (opts.from < 3 || opts.to.max(opts.extend_to) > max) {
        return Err(Failure::new(exit::RANGE, format!("orders must lie in 3..={max}")));
    }
    let mut report = TightReport::default();
    for n in opts.from..=opts.to {
        report.rows.push(scan(n, opts));
    }
    if report.witness_count() == 0 && opts.from <= opts.to {
        for n in opts.to + 1..=opts.extend_to {
            report.extended = true;
            let row = scan(n, opts);
            let found = !row.witnesses.is_empty();
            report.rows.push(row);
            if found {
                break;
            }
        }
    }
    Ok(report)
}
