use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mopdom::commands::{self, BoundOptions, ExactOptions};
use mopdom::stats;
use mopdom::tight::{search_tight, TightOptions};
use mopdom::{exit, parse, read_text, Failure};
use mopdom_core::format::write_record;

#[derive(Parser)]
#[command(name = "mopdom", version, about = "Disjunctive domination in maximal outerplanar graphs")]
struct Cli {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = "MOPDOM_JOBS", default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every record of a MOP file.
    Validate {
        /// Input file, or `-` for standard input.
        input: String,
    },
    /// Exact disjunctive domination number and witness per record (JSONL).
    Exact {
        input: String,
        /// Stop searching above this size.
        #[arg(long)]
        cap: Option<usize>,
        /// Allow orders above 20.
        #[arg(long)]
        force: bool,
        /// Also compute the domination number.
        #[arg(long)]
        gamma: bool,
        #[arg(long)]
        timings: bool,
    },
    /// Construct a set within floor(2(n+k)/9) per record (JSONL).
    Bound {
        input: String,
        /// Write one JSONL reduction trace per record here.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
    },
    /// Write all triangulations of the n-gon.
    Enumerate {
        n: usize,
        /// One representative per rotation/reflection class.
        #[arg(long)]
        canonical: bool,
    },
    /// Find mops whose disjunctive domination number equals the bound.
    SearchTight {
        #[arg(long, default_value_t = 7)]
        from: usize,
        #[arg(long, default_value_t = 13)]
        to: usize,
        /// Keep scanning up to this order if the range has no witness.
        #[arg(long, default_value_t = 16)]
        extend_to: usize,
        /// Sample this many random mops per order instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit every witness rather than one per order.
        #[arg(long)]
        all: bool,
    },
    /// CSV aggregates per order, from `exact` output or by enumeration.
    Stats {
        /// JSONL from `exact`; omit to enumerate `--from..=--to`.
        input: Option<String>,
        #[arg(long, default_value_t = 7)]
        from: usize,
        #[arg(long, default_value_t = 12)]
        to: usize,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let jobs = cli.jobs;
    match cli.command {
        Command::Validate { input } => commands::validate(&parse(&read_text(&input)?)?, &mut out)?,
        Command::Exact { input, cap, force, gamma, timings } => {
            let opts = ExactOptions { cap, force, gamma, timings, jobs };
            commands::exact(&parse(&read_text(&input)?)?, &opts, &mut out)?
        }
        Command::Bound { input, trace_dir, timings } => {
            let opts = BoundOptions { trace_dir, timings, jobs };
            commands::bound_cmd(&parse(&read_text(&input)?)?, &opts, &mut out)?
        }
        Command::Enumerate { n, canonical } => commands::enumerate(n, canonical, &mut out)?,
        Command::SearchTight { from, to, extend_to, samples, seed, all } => {
            let report = search_tight(&TightOptions { from, to, extend_to, samples, seed, jobs })?;
            eprintln!("{:>4} {:>10} {:>10}  example", "n", "instances", "witnesses");
            for row in &report.rows {
                let example = row.witnesses.first().map(|m| format!("{:?}", m.diagonals())).unwrap_or_default();
                eprintln!("{:>4} {:>10} {:>10}  {example}", row.n, row.instances, row.witnesses.len());
                for m in row.witnesses.iter().take(if all { usize::MAX } else { 1 }) {
                    out.write_all(write_record(m).as_bytes())?;
                }
            }
            if report.extended {
                eprintln!("no witness in {from}..={to}; scanned up to {}", report.rows.last().map_or(to, |r| r.n));
            }
        }
        Command::Stats { input, from, to } => {
            let samples = match input {
                Some(path) => stats::samples_from_jsonl(&read_text(&path)?)?,
                None => stats::samples_from_enumeration(from, to, jobs)?,
            };
            stats::write_csv(&samples, &mut out)?
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::from(exit::OK)
        }
        Err(e) => {
            eprintln!("mopdom: {e}");
            let code = e.downcast_ref::<Failure>().map_or(exit::PARSE, |f| f.code);
            ExitCode::from(code)
        }
    }
}
