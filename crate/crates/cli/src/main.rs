//! `lockflow` command-line driver.
//!
//! Every successful solve prints one JSON line on stdout. Exit codes: 0 ok,
//! 1 infeasible, 2 bad input, 3 verify mismatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use lockflow::generate::{generate_assignment, generate_maxflow, generate_sparse_assignment, GenerateError};
use lockflow::maxflow::seq::default_heuristic_period;
use lockflow::{
    brute_force_assignment, edmonds_karp, hybrid_solve, parse_dimacs, parse_dimacs_asn, parse_dimacs_max,
    serialize_asn, serialize_max, solve_assignment, solve_maxflow_seq, AssignError, AssignmentInstance, DimacsError,
    FlowNetwork, HybridConfig, InstanceFile, OracleError, ScalingConfig, SolveError, SolveReport,
};

#[derive(Parser)]
#[command(name = "lockflow", version, about = "Push-relabel max-flow and cost-scaling assignment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum flow of a DIMACS `p max` file.
    Maxflow(SolveArgs),
    /// Maximum-weight perfect matching of a DIMACS `p asn` file.
    Assign(AssignArgs),
    /// Write a seeded random instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Solve a file and compare against the brute-force oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Seq,
    Par,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Seq)]
    mode: ModeArg,
    /// Worker threads for `--mode par`.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Operations per worker per round. Sequential max-flow ignores it.
    #[arg(long)]
    cycle: Option<usize>,
}

#[derive(Args)]
struct AssignArgs {
    #[command(flatten)]
    solve: SolveArgs,
    /// Epsilon divisor between refines.
    #[arg(long)]
    alpha: Option<i64>,
    /// Turn off price update and arc fixing.
    #[arg(long)]
    no_heuristics: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graph with a guaranteed s-t path.
    Maxflow {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long, default_value_t = 100)]
        max_value: i64,
        #[arg(long)]
        seed: u64,
        /// Defaults to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bipartite instance, complete unless `--degree` is given.
    Assign {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value_t = 100)]
        max_value: i64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Reference {
    Oracle,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Reference::Oracle)]
    against: Reference,
    #[arg(long, value_enum, default_value_t = ModeArg::Par)]
    mode: ModeArg,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    #[arg(long)]
    cycle: Option<usize>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: DimacsError },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Assign(#[from] AssignError),
    #[error(transparent)]
    MaxFlow(#[from] SolveError),
    #[error("solver found {solver}, oracle found {oracle}")]
    Mismatch { solver: i64, oracle: i64 },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Assign(AssignError::Infeasible) => 1,
            CliError::Mismatch { .. } => 3,
            _ => 2,
        }
    }
}

#[derive(Serialize)]
struct Record {
    objective: i64,
    pushes: u64,
    relabels: u64,
    rounds: u64,
    elapsed_ms: f64,
    mode: &'static str,
    workers: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<i64>,
}

impl Record {
    fn new(report: &SolveReport, mode: ModeArg, workers: usize) -> Self {
        let (mode, workers) = match mode {
            ModeArg::Seq => ("seq", 1),
            ModeArg::Par => ("par", workers),
        };
        Self {
            objective: report.objective,
            pushes: report.pushes,
            relabels: report.relabels,
            rounds: report.rounds,
            elapsed_ms: report.elapsed_ms(),
            mode,
            workers,
            oracle: None,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn parsed<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, DimacsError>) -> Result<T, CliError> {
    let text = read(path)?;
    parse(&text).map_err(|source| CliError::Parse { path: path.to_owned(), source })
}

fn run_maxflow(net: &FlowNetwork, mode: ModeArg, workers: usize, cycle: Option<usize>) -> Result<Record, CliError> {
    let report = match mode {
        ModeArg::Seq => solve_maxflow_seq(net, default_heuristic_period(net)).report,
        ModeArg::Par => {
            let mut cfg = HybridConfig::with_workers(workers);
            if let Some(cycle) = cycle {
                cfg.cycle_budget = cycle;
            }
            hybrid_solve(net, &cfg)?.report
        }
    };
    Ok(Record::new(&report, mode, workers))
}

fn scaling_config(mode: ModeArg, workers: usize, cycle: Option<usize>) -> ScalingConfig {
    let mut cfg = match mode {
        ModeArg::Seq => ScalingConfig::default(),
        ModeArg::Par => ScalingConfig::parallel(workers),
    };
    if let Some(cycle) = cycle {
        cfg.cycle_budget = cycle;
    }
    cfg
}

fn run_assign(inst: &AssignmentInstance, cfg: &ScalingConfig, mode: ModeArg, workers: usize) -> Result<Record, CliError> {
    let sol = solve_assignment(inst, cfg)?;
    Ok(Record::new(&sol.report, mode, workers))
}

fn write_output(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Option<Record>, CliError> {
    match cli.command {
        Command::Maxflow(args) => {
            let net = parsed(&args.input, parse_dimacs_max)?;
            run_maxflow(&net, args.mode, args.workers as usize, args.cycle).map(Some)
        }
        Command::Assign(args) => {
            let s = &args.solve;
            let inst = parsed(&s.input, parse_dimacs_asn)?;
            let mut cfg = scaling_config(s.mode, s.workers as usize, s.cycle);
            if let Some(alpha) = args.alpha {
                cfg.alpha = alpha;
            }
            if args.no_heuristics {
                cfg = cfg.without_heuristics();
            }
            run_assign(&inst, &cfg, s.mode, s.workers as usize).map(Some)
        }
        Command::Gen(GenCommand::Maxflow { nodes, arcs, max_value, seed, output }) => {
            let net = generate_maxflow(nodes, arcs, max_value, seed)?;
            write_output(&serialize_max(&net), output.as_deref())?;
            Ok(None)
        }
        Command::Gen(GenCommand::Assign { n, degree, max_value, seed, output }) => {
            let inst = match degree {
                Some(d) => generate_sparse_assignment(n, d, max_value, seed)?,
                None => generate_assignment(n, max_value, seed)?,
            };
            write_output(&serialize_asn(&inst), output.as_deref())?;
            Ok(None)
        }
        Command::Verify(args) => {
            let Reference::Oracle = args.against;
            let workers = args.workers as usize;
            let (mut record, oracle) = match parsed(&args.input, parse_dimacs)? {
                InstanceFile::MaxFlow(net) => (run_maxflow(&net, args.mode, workers, args.cycle)?, edmonds_karp(&net)),
                InstanceFile::Assignment(inst) => {
                    // Size check first so an oversized file fails before solving.
                    let oracle = brute_force_assignment(&inst)?.weight;
                    let cfg = scaling_config(args.mode, workers, args.cycle);
                    (run_assign(&inst, &cfg, args.mode, workers)?, oracle)
                }
            };
            record.oracle = Some(oracle);
            if record.objective != oracle {
                return Err(CliError::Mismatch { solver: record.objective, oracle });
            }
            Ok(Some(record))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(record) => {
            if let Some(record) = record {
                println!("{}", serde_json::to_string(&record).expect("record serializes"));
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("lockflow: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Assign(AssignError::Infeasible).exit_code(), 1);
        assert_eq!(CliError::Assign(AssignError::BadAlpha(1)).exit_code(), 2);
        assert_eq!(CliError::Mismatch { solver: 1, oracle: 2 }.exit_code(), 3);
        assert_eq!(CliError::Generate(GenerateError::NoArcs).exit_code(), 2);
    }

    #[test]
    fn sequential_record_reports_one_worker() {
        let report = SolveReport { objective: 5, ..SolveReport::default() };
        let seq = serde_json::to_value(Record::new(&report, ModeArg::Seq, 8)).unwrap();
        assert_eq!(seq["workers"], 1);
        assert!(seq.get("oracle").is_none());
        let par = serde_json::to_value(Record::new(&report, ModeArg::Par, 8)).unwrap();
        assert_eq!(par["workers"], 8);
        assert_eq!(par["mode"], "par");
    }

    #[test]
    fn cycle_flag_overrides_refine_budget() {
        let cfg = scaling_config(ModeArg::Par, 3, Some(9));
        assert_eq!(cfg.cycle_budget, 9);
        assert_eq!(cfg.mode, lockflow::Mode::Parallel { workers: 3 });
        assert_eq!(scaling_config(ModeArg::Seq, 3, None), ScalingConfig::default());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
