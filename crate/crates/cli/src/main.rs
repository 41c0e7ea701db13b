mod bench;
mod failure;
mod generate;
mod reduce;
mod solve;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use failure::{Failure, Outcome};
use telebroadcast::io::Instance;
use telebroadcast::{validate_schedule, BroadcastSchedule};

/// Telephone broadcasting toolkit: generate instances, solve them, check
/// schedules, build hardness reductions and benchmark the solvers.
///
/// Exit codes: 0 success, 1 validation failure, 2 usage error,
/// 3 budget or size cap exceeded.
#[derive(Parser)]
#[command(name = "telebroadcast", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    Generate(generate::GenerateArgs),
    Solve(solve::SolveArgs),
    /// Check a schedule against an instance and print its completion round.
    Validate {
        instance: PathBuf,
        schedule: PathBuf,
    },
    Reduce(reduce::ReduceArgs),
    Bench(bench::BenchArgs),
}

pub(crate) fn read_instance(path: &Path) -> Outcome<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Instance::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub(crate) fn emit(path: Option<&Path>, text: &str) -> Outcome<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn validate(instance: &Path, schedule: &Path) -> Outcome<()> {
    let loaded = read_instance(instance)?
        .load()
        .map_err(|e| Failure::usage(format!("{}: {e}", instance.display())))?;
    let graph = loaded
        .graph()
        .ok_or_else(|| Failure::usage("instance is not a graph"))?;
    let text = std::fs::read_to_string(schedule)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", schedule.display())))?;
    let sched: BroadcastSchedule = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", schedule.display())))?;
    match validate_schedule(&graph, &sched) {
        Ok(rounds) => {
            println!("{rounds}");
            Ok(())
        }
        Err(e) => Err(Failure::invalid(format!("invalid schedule: {e:?} ({e})"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => generate::run(args),
        Command::Solve(args) => solve::run(args),
        Command::Validate { instance, schedule } => validate(&instance, &schedule),
        Command::Reduce(args) => reduce::run(args),
        Command::Bench(args) => bench::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
