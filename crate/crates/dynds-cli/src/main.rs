use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dynds_cli::{bench, crosscheck, reduce, solve, Failure, OpTrace, Scope, SolveError, StructureId};
use dynds_core::reductions::{AdapterId, ReductionId};
use dynds_core::scaling::{BenchStructure, DEFAULT_TOLERANCE};
use dynds_core::Error;

/// Dynamic range-query structures, reductions and scaling benchmarks.
#[derive(Parser)]
#[command(name = "dynds", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Answer every query of an operation trace, one line per query.
    Solve {
        trace: PathBuf,
        /// `oracle` or `real`.
        #[arg(long, default_value = "real")]
        structure: StructureId,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a reduction on a graph or OuMv instance file.
    Reduce {
        instance: PathBuf,
        #[arg(long)]
        reduction: ReductionId,
        /// `oracle`, `real` or `fault`.
        #[arg(long, default_value = "real")]
        adapter: AdapterId,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded reduction and structure suites against brute force; exit 1 on any mismatch.
    Crosscheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// `default`, `reductions`, `structures` or `fault`.
        #[arg(long, default_value = "default")]
        scope: Scope,
        /// Instances per reduction and traces per structure.
        #[arg(long)]
        instances: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Counter-based scaling run as CSV with a fitted exponent.
    Bench {
        #[arg(long)]
        structure: BenchStructure,
        /// Comma-separated sizes, at least four.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        /// Write zeros in the wall-time column.
        #[arg(long)]
        no_time: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::new(2, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Solve { trace, structure, out } => {
            let text = read(&trace)?;
            if text.lines().all(|l| l.split('#').next().unwrap_or("").trim().is_empty()) {
                return Ok(0);
            }
            let t = OpTrace::parse(&text).map_err(|e| match e {
                Error::Parse { line, message } => Failure::new(2, format!("parse error at line {line}: {message}")),
                e => Failure::new(2, e.to_string()),
            })?;
            let solved = solve(&t, structure);
            let mut text = String::new();
            for l in &solved.lines {
                text += l;
                text.push('\n');
            }
            emit(out.as_deref(), &text)?;
            match solved.error {
                None => Ok(0),
                Some(SolveError::Setup(e)) => Err(Failure::new(2, format!("invalid header: {e}"))),
                Some(SolveError::Op { index, error }) => {
                    let op = t.ops.get(index).map(|o| format!(" ({o})")).unwrap_or_default();
                    Err(Failure::new(3, format!("error at op {index}{op}: {error}")))
                }
            }
        }
        Command::Reduce { instance, reduction, adapter, out } => {
            let text = reduce(&read(&instance)?, reduction, adapter)?;
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Crosscheck { seed, scope, instances, out } => {
            let (report, clean) = crosscheck(seed, scope, instances);
            emit(out.as_deref(), &report)?;
            Ok(if clean { 0 } else { 1 })
        }
        Command::Bench { structure, sizes, seed, tol, no_time, out } => {
            let report = bench(structure, sizes.as_deref(), seed, tol)?;
            emit(out.as_deref(), &report.to_csv(!no_time))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("dynds: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
