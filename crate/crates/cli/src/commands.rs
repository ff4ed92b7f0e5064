use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::Result;
use mopdom_core::constructor::construct_bounded_2dd;
use mopdom_core::format::{write_record, Record};
use mopdom_core::generators::{canonical_form, enumerate_canonical, enumerate_triangulations};
use mopdom_core::solvers::{is_2dd_set, ExactSolver, SolverError, HARD_LIMIT, SOFT_LIMIT};
use mopdom_core::{bound, Mop};

use crate::record::{ResultRecord, SCHEMA};
use crate::{exit, par_map, require_valid, Failure};

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn base_record(i: usize, r: &Record) -> ResultRecord {
    let k = r.mop.degree_two_count();
    ResultRecord {
        schema: SCHEMA,
        id: canonical_form(&r.mop).to_string(),
        record: i + 1,
        line: r.line,
        n: r.mop.n(),
        k,
        bound: bound(r.mop.n(), k),
        ..ResultRecord::default()
    }
}

fn write_jsonl(out: &mut dyn Write, recs: &[ResultRecord]) -> Result<()> {
    for r in recs {
        let line = serde_json::to_string(r)?;
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Prints one line per record; fails with exit code 1 if any is invalid.
pub fn validate(records: &[Record], out: &mut dyn Write) -> Result<()> {
    let mut bad = 0;
    for (i, r) in records.iter().enumerate() {
        let report = r.mop.validate();
        if report.is_valid() {
            writeln!(out, "record {} (line {}): ok, n = {}", i + 1, r.line, r.mop.n())?;
        } else {
            bad += 1;
            writeln!(out, "record {} (line {}): invalid: {report}", i + 1, r.line)?;
        }
    }
    if bad > 0 {
        return Err(Failure::new(exit::INVALID, format!("{bad} of {} records invalid", records.len())).into());
    }
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct ExactOptions {
    pub cap: Option<usize>,
    pub force: bool,
    /// Also compute the domination number.
    pub gamma: bool,
    pub timings: bool,
    pub jobs: usize,
}

pub fn exact(records: &[Record], opts: &ExactOptions, out: &mut dyn Write) -> Result<()> {
    require_valid(records)?;
    let limit = if opts.force { HARD_LIMIT } else { SOFT_LIMIT };
    if let Some((i, r)) = records.iter().enumerate().find(|(_, r)| r.mop.n() > limit) {
        let hint = if opts.force { "" } else { " (use --force)" };
        return Err(Failure::new(
            exit::TOO_LARGE,
            format!("record {} (line {}): n = {} exceeds {limit}{hint}", i + 1, r.line, r.mop.n()),
        )
        .into());
    }
    let solver = ExactSolver { cap: opts.cap, force: opts.force };
    let indexed: Vec<(usize, &Record)> = records.iter().enumerate().collect();
    let recs = par_map(&indexed, opts.jobs, |&(i, r)| {
        let mut rec = base_record(i, r);
        let mut times = BTreeMap::new();
        let t = Instant::now();
        match solver.solve_2dd(&r.mop) {
            Ok(s) => {
                rec.gamma2d = Some(s.size);
                rec.witness = Some(s.witness);
            }
            Err(SolverError::CapExceeded { .. }) => rec.cap_exceeded = Some(true),
            Err(e) => unreachable!("order checked up front: {e}"),
        }
        times.insert("gamma2d".to_string(), ms(t));
        if opts.gamma {
            let t = Instant::now();
            rec.gamma = ExactSolver { cap: None, force: opts.force }.solve_gamma(&r.mop).ok().map(|s| s.size);
            times.insert("gamma".to_string(), ms(t));
        }
        if opts.timings {
            rec.timings_ms = Some(times);
        }
        rec
    });
    write_jsonl(out, &recs)
}

#[derive(Debug, Clone, Default)]
pub struct BoundOptions {
    pub trace_dir: Option<std::path::PathBuf>,
    pub timings: bool,
    pub jobs: usize,
}

pub fn bound_cmd(records: &[Record], opts: &BoundOptions, out: &mut dyn Write) -> Result<()> {
    require_valid(records)?;
    if let Some((i, r)) = records.iter().enumerate().find(|(_, r)| r.mop.n() < 7) {
        return Err(Failure::new(
            exit::RANGE,
            format!("record {} (line {}): n = {} is below 7", i + 1, r.line, r.mop.n()),
        )
        .into());
    }
    if let Some(dir) = &opts.trace_dir {
        std::fs::create_dir_all(dir)?;
    }
    let indexed: Vec<(usize, &Record)> = records.iter().enumerate().collect();
    let results = par_map(&indexed, opts.jobs, |&(i, r)| -> Result<ResultRecord> {
        let mut rec = base_record(i, r);
        let t = Instant::now();
        let trace = construct_bounded_2dd(&r.mop)?;
        let elapsed = ms(t);
        rec.constructor_size = Some(trace.final_set.len());
        rec.verified = Some(is_2dd_set(&r.mop, &trace.final_set));
        rec.constructor_set = Some(trace.final_set.clone());
        rec.used_fallback = Some(trace.used_fallback);
        rec.base_case = Some(trace.base_case.tag());
        rec.steps = Some(trace.steps.len());
        rec.anomalies = Some(trace.anomalies.iter().map(describe_anomaly).collect());
        if opts.timings {
            rec.timings_ms = Some(BTreeMap::from([("construct".to_string(), elapsed)]));
        }
        if let Some(dir) = &opts.trace_dir {
            write_trace(dir, &rec, &trace.to_jsonl())?;
        }
        Ok(rec)
    });
    let recs = results.into_iter().collect::<Result<Vec<_>>>()?;
    write_jsonl(out, &recs)?;
    let failed = recs.iter().filter(|r| r.verified != Some(true)).count();
    if failed > 0 {
        return Err(Failure::new(exit::INVALID, format!("{failed} constructed sets failed verification")).into());
    }
    Ok(())
}

fn describe_anomaly(a: &mopdom_core::constructor::Anomaly) -> String {
    match a.rule_id {
        Some(id) => format!("n={} {id}: {}", a.n, a.message),
        None => format!("n={}: {}", a.n, a.message),
    }
}

fn write_trace(dir: &Path, rec: &ResultRecord, jsonl: &str) -> Result<()> {
    let path = dir.join(format!("{:06}-{}.jsonl", rec.record, rec.id));
    std::fs::write(path, jsonl)?;
    Ok(())
}

pub const ENUMERATE_RANGE: std::ops::RangeInclusive<usize> = 3..=16;

/// Writes every triangulation of the n-gon (or one per dihedral class).
pub fn enumerate(n: usize, canonical: bool, out: &mut dyn Write) -> Result<()> {
    if !ENUMERATE_RANGE.contains(&n) {
        return Err(Failure::new(exit::RANGE, format!("n = {n} outside 3..=16")).into());
    }
    let emit = |out: &mut dyn Write, m: &Mop| out.write_all(write_record(m).as_bytes());
    if canonical {
        for m in enumerate_canonical(n) {
            emit(out, &m)?;
        }
    } else {
        for m in enumerate_triangulations(n) {
            emit(out, &m)?;
        }
    }
    Ok(())
}
