use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kmlp::{Execution, TRIANGLE_TOLERANCE_MS};
use kmlp_bench::compare::{compare, COMPARE_CSV_HEADER};
use kmlp_bench::decimal::seconds_to_ms;
use kmlp_bench::format::{InstanceFile, PlanFile};
use kmlp_bench::generate::{generate, GenParams, Geometry, ReleaseModel};
use kmlp_bench::ingest::{ingest, DepotChoice, IngestOptions};
use kmlp_bench::run::{audit, report_for, run, Algorithm, REPORT_CSV_HEADER};

#[derive(Parser)]
#[command(name = "kmlp-bench", version, about = "Generate, ingest, solve and compare k-vehicle latency instances")]
struct Cli {
    /// Seed for generation, random depots and randomized rounding.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Run everything on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// euclidean-grid or uniform-metric.
        #[arg(long, default_value = "euclidean-grid")]
        geometry: String,
        /// Grid side, or number of points for uniform-metric.
        #[arg(long, default_value_t = 10)]
        size: usize,
        /// Milliseconds per grid unit, or the base distance for uniform-metric.
        #[arg(long, default_value_t = 60_000)]
        scale_ms: i64,
        /// zero, poisson:RATE (per second) or window:START:END (seconds).
        #[arg(long, default_value = "zero")]
        releases: String,
    },
    /// Build an instance from trip and distance CSV files.
    Ingest {
        #[arg(long)]
        trips: PathBuf,
        #[arg(long)]
        distances: PathBuf,
        /// Window start, epoch seconds.
        #[arg(long)]
        window_start: String,
        /// Window end (exclusive), epoch seconds.
        #[arg(long)]
        window_end: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Depot cell id, or `random` to draw one from --seed.
        #[arg(long)]
        depot: String,
        /// Replace distances by shortest-path distances before validation.
        #[arg(long)]
        repair_metric: bool,
    },
    /// Solve one instance and report its metrics.
    Run {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "greedy")]
        algo: String,
        /// Where to write the plan as JSON.
        #[arg(long)]
        plan_out: Option<PathBuf>,
        /// Report a wall clock of 0 so the output depends only on the inputs.
        #[arg(long)]
        no_timing: bool,
    },
    /// Sweep fleet sizes over instances and algorithms.
    Compare {
        #[arg(long, num_args = 1.., required = true)]
        instances: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "greedy,kmlp-fast")]
        algos: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
        k_sweep: Vec<usize>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Check an instance (and optionally a plan) without solving.
    Validate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        plan: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn execute(cli: Cli) -> Result<()> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match cli.command {
        Command::Gen { n, k, geometry, size, scale_ms, releases } => {
            let params = GenParams {
                n,
                k,
                seed: cli.seed,
                geometry: Geometry::parse(&geometry, size, scale_ms)?,
                releases: releases.parse::<ReleaseModel>()?,
            };
            emit(&cli.out, &InstanceFile::from_instance(&generate(&params)?).to_json())
        }
        Command::Ingest { trips, distances, window_start, window_end, k, depot, repair_metric } => {
            let opts = IngestOptions {
                window_start_ms: seconds_to_ms(&window_start).context("--window-start")?,
                window_end_ms: seconds_to_ms(&window_end).context("--window-end")?,
                k,
                depot: if depot == "random" { DepotChoice::Random(cli.seed) } else { DepotChoice::Cell(depot) },
                repair_metric,
            };
            let open = |p: &PathBuf| std::fs::File::open(p).with_context(|| format!("opening {}", p.display()));
            let inst = ingest(open(&trips)?, open(&distances)?, &opts)?;
            emit(&cli.out, &InstanceFile::from_instance(&inst).to_json())
        }
        Command::Run { instance, algo, plan_out, no_timing } => {
            let inst = InstanceFile::read(&instance)?.to_instance()?;
            let out = run(&inst, algo.parse()?, cli.seed, exec, !no_timing)?;
            if let Some(p) = plan_out {
                write_json(&p, &out.plan)?;
            }
            match cli.format {
                OutFormat::Json => emit(&cli.out, &pretty(&out.report)?),
                OutFormat::Csv => emit(&cli.out, &format!("{REPORT_CSV_HEADER}\n{}\n", out.report.csv_row())),
            }
        }
        Command::Compare { instances, algos, k_sweep, no_timing } => {
            let algos = algos.iter().map(|a| a.parse()).collect::<Result<Vec<Algorithm>>>()?;
            let insts = instances
                .iter()
                .map(|p| {
                    let name = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into());
                    Ok((name, InstanceFile::read(p)?.to_instance()?))
                })
                .collect::<Result<Vec<_>>>()?;
            let rows = compare(&insts, &algos, &k_sweep, cli.seed, exec, !no_timing)?;
            match cli.format {
                OutFormat::Json => emit(&cli.out, &pretty(&rows)?),
                OutFormat::Csv => {
                    let mut s = format!("{COMPARE_CSV_HEADER}\n");
                    for r in &rows {
                        s.push_str(&r.csv_row());
                        s.push('\n');
                    }
                    emit(&cli.out, &s)
                }
            }
        }
        Command::Validate { instance, plan } => {
            let file = InstanceFile::read(&instance)?;
            let violations = file.metric()?.violations(TRIANGLE_TOLERANCE_MS);
            if !violations.is_empty() {
                let list: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
                bail!("distance matrix is not a metric:\n{}", list.join("\n"));
            }
            let inst = file.to_instance()?;
            if let Some(p) = plan {
                let pf = PlanFile::read(&p)?;
                let algo = pf.algorithm.parse().unwrap_or(Algorithm::Greedy);
                let rp = pf.to_plan(&inst)?;
                let report = report_for(&inst, algo, cli.seed, &rp, 0)?;
                audit(&inst, &pf, &report)?;
            }
            emit(&cli.out, "ok\n")
        }
    }
}

fn is_size_limit(err: &anyhow::Error) -> bool {
    err.chain().any(|e| matches!(e.downcast_ref::<kmlp::Error>(), Some(kmlp::Error::TooLarge { .. })))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_size_limit(&e) { 2 } else { 1 })
        }
    }
}
