use std::path::PathBuf;
use std::time::Instant;

use clap::Args;

use telebroadcast::graph::broadcast_lower_bound;
use telebroadcast::oracle::exact_broadcast_time;

use crate::failure::{Failure, Outcome};
use crate::solve::{csv_writer, instance_name, solve, Algo, Params, RunRecord};

/// Run algorithms over every *.json instance of a directory (in file-name
/// order) and write one CSV row per (instance, repeat, algorithm). Algorithms
/// that do not apply to an instance's family are skipped; failed runs are
/// recorded as `error:<exit code>` in the rounds column. When `oracle` is
/// among the algorithms its optimum fills the oracle and ratio columns.
#[derive(Args)]
pub struct BenchArgs {
    corpus: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    algos: Vec<Algo>,
    #[arg(long, default_value_t = 1)]
    repeat: usize,
    #[command(flatten)]
    params: Params,
    /// Write 0 in the ms column so that the output is byte-stable.
    #[arg(long)]
    no_timing: bool,
    /// CSV output (default: standard output).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

pub fn run(args: BenchArgs) -> Outcome<()> {
    let entries = std::fs::read_dir(&args.corpus)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", args.corpus.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();

    let mut w = csv_writer(args.out.as_deref())?;
    let with_oracle = args.algos.contains(&Algo::Oracle);
    for file in &files {
        let Ok(loaded) = crate::read_instance(file)
            .and_then(|i| i.load().map_err(|e| Failure::usage(e.to_string())))
        else {
            continue;
        };
        let Some(graph) = loaded.graph() else {
            continue;
        };
        let Ok(lower_bound) = broadcast_lower_bound(&graph, args.params.source) else {
            continue;
        };
        let oracle = with_oracle
            .then(|| exact_broadcast_time(&graph, args.params.source).ok())
            .flatten()
            .map(|(t, _)| t);
        for _ in 0..args.repeat {
            for &algo in args.algos.iter().filter(|a| a.accepts(&loaded)) {
                let start = Instant::now();
                let result = solve(&loaded, algo, &args.params);
                let ms = if args.no_timing {
                    0
                } else {
                    start.elapsed().as_millis()
                };
                let (epsilon, p, k) = match &result {
                    Ok(s) => (s.epsilon, s.p, s.k),
                    Err(_) => (None, None, None),
                };
                let record = RunRecord {
                    instance: instance_name(file),
                    algo: algo.name(),
                    epsilon,
                    p,
                    k,
                    rounds: result.map(|s| s.rounds).map_err(|f| f.code),
                    lower_bound,
                    oracle,
                    ms,
                };
                w.write_record(record.fields())
                    .map_err(|e| Failure::usage(e.to_string()))?;
            }
        }
    }
    w.flush().map_err(|e| Failure::usage(e.to_string()))
}
