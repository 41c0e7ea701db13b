use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};

use telebroadcast::bandwidth::{dp_broadcast_general_source, DpConfig};
use telebroadcast::doublecover::kpath_broadcast_ptas;
use telebroadcast::graph::{
    broadcast_lower_bound, heuristic_bandwidth_ordering, ordering_bandwidth,
};
use telebroadcast::io::Loaded;
use telebroadcast::oracle::{exact_broadcast_time, tree_broadcast_time};
use telebroadcast::prefixcover::{kcycle_broadcast_ptas, Factor, PtasParams};
use telebroadcast::{validate_schedule, BroadcastSchedule, Graph, Round, Vertex};

use crate::failure::{Failure, Outcome};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Oracle,
    Tree,
    KcyclePtas,
    KpathPtas,
    BandwidthDp,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::Tree => "tree",
            Algo::KcyclePtas => "kcycle-ptas",
            Algo::KpathPtas => "kpath-ptas",
            Algo::BandwidthDp => "bandwidth-dp",
        }
    }

    /// Whether the algorithm accepts instances of this family.
    pub fn accepts(self, loaded: &Loaded) -> bool {
        match self {
            Algo::KcyclePtas => matches!(loaded, Loaded::KCycle(_)),
            Algo::KpathPtas => matches!(loaded, Loaded::KPath(_)),
            _ => loaded.graph().is_some(),
        }
    }
}

/// Solver parameters shared by `solve` and `bench`.
#[derive(Args, Clone)]
pub struct Params {
    /// Accuracy for the approximation schemes; p = ceil(3 / eps^2). Default 0.5.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Rounding parameter; overrides --epsilon.
    #[arg(long)]
    pub p: Option<usize>,
    /// Bandwidth for bandwidth-dp; defaults to that of the ordering used.
    #[arg(long)]
    pub k: Option<usize>,
    /// Originator (vertex 0 is the center of a k-cycle and s of a k-path).
    #[arg(long, default_value_t = 0)]
    pub source: Vertex,
}

impl Params {
    /// The effective rounding parameter and the epsilon to report.
    fn ptas(&self) -> Outcome<(PtasParams, Option<f64>)> {
        if let Some(p) = self.p {
            if p == 0 {
                return Err(Failure::usage("--p must be positive"));
            }
            return Ok((PtasParams::new(p), self.epsilon));
        }
        let eps = self.epsilon.unwrap_or(0.5);
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Failure::usage("--epsilon must be positive"));
        }
        Ok((PtasParams::from_epsilon(eps), Some(eps)))
    }
}

pub struct Solved {
    pub schedule: BroadcastSchedule,
    pub rounds: Round,
    pub epsilon: Option<f64>,
    pub p: Option<usize>,
    pub k: Option<usize>,
    pub factor: Option<Factor>,
}

fn graph_of(loaded: &Loaded) -> Outcome<Graph> {
    loaded
        .graph()
        .ok_or_else(|| Failure::usage("instance is not a graph"))
}

pub fn solve(loaded: &Loaded, algo: Algo, params: &Params) -> Outcome<Solved> {
    if !algo.accepts(loaded) {
        return Err(Failure::usage(format!(
            "{} does not apply to this instance family",
            algo.name()
        )));
    }
    let graph = graph_of(loaded)?;
    let source = params.source;
    if !graph.contains(source) {
        return Err(Failure::usage(format!("source {source} is not a vertex")));
    }
    let mut solved = Solved {
        schedule: BroadcastSchedule::default(),
        rounds: 0,
        epsilon: None,
        p: None,
        k: None,
        factor: None,
    };
    solved.schedule = match (algo, loaded) {
        (Algo::Oracle, _) => exact_broadcast_time(&graph, source)?.1,
        (Algo::Tree, _) => tree_broadcast_time(&graph, source)?.1,
        (Algo::KcyclePtas, Loaded::KCycle(spec)) => {
            let (pp, eps) = params.ptas()?;
            solved.epsilon = eps;
            solved.p = Some(pp.p);
            solved.factor = Some(Factor::single_cover(pp.p));
            kcycle_broadcast_ptas(spec, source, pp).map_err(|e| Failure::usage(e.to_string()))?
        }
        (Algo::KpathPtas, Loaded::KPath(spec)) => {
            let (pp, eps) = params.ptas()?;
            solved.epsilon = eps;
            solved.p = Some(pp.p);
            solved.factor = Some(Factor::double_cover(pp.p));
            kpath_broadcast_ptas(spec, source, pp).map_err(|e| Failure::usage(e.to_string()))?
        }
        (Algo::BandwidthDp, _) => {
            let ordering = match loaded {
                Loaded::General {
                    ordering: Some(ord),
                    ..
                } => ord.clone(),
                _ => heuristic_bandwidth_ordering(&graph).0,
            };
            let achieved = ordering_bandwidth(&graph, &ordering)
                .map_err(|e| Failure::usage(e.to_string()))?
                .max(1);
            let k = params.k.unwrap_or(achieved);
            solved.k = Some(k);
            dp_broadcast_general_source(&graph, &ordering, k, source, &DpConfig::default())?
                .schedule
        }
        _ => unreachable!("family checked by accepts"),
    };
    solved.rounds = validate_schedule(&graph, &solved.schedule)
        .map_err(|e| Failure::invalid(format!("solver produced an invalid schedule: {e}")))?;
    Ok(solved)
}

/// One CSV row.
pub struct RunRecord {
    pub instance: String,
    pub algo: &'static str,
    pub epsilon: Option<f64>,
    pub p: Option<usize>,
    pub k: Option<usize>,
    /// Completion round, or the exit code of a failed run.
    pub rounds: Result<Round, u8>,
    pub lower_bound: Round,
    pub oracle: Option<Round>,
    pub ms: u128,
}

pub const HEADER: [&str; 10] = [
    "instance",
    "algo",
    "epsilon",
    "p",
    "k",
    "rounds",
    "lower_bound",
    "oracle",
    "ratio",
    "ms",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl RunRecord {
    pub fn fields(&self) -> [String; 10] {
        let ratio = match (self.rounds, self.oracle) {
            (Ok(r), Some(o)) if o > 0 => format!("{:.4}", r as f64 / o as f64),
            (Ok(_), Some(_)) => "1.0000".to_string(),
            _ => String::new(),
        };
        [
            self.instance.clone(),
            self.algo.to_string(),
            opt(self.epsilon),
            opt(self.p),
            opt(self.k),
            match self.rounds {
                Ok(r) => r.to_string(),
                Err(code) => format!("error:{code}"),
            },
            self.lower_bound.to_string(),
            opt(self.oracle),
            ratio,
            self.ms.to_string(),
        ]
    }
}

pub fn csv_writer(out: Option<&Path>) -> Outcome<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(
            std::fs::File::create(p)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display())))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(HEADER)
        .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(w)
}

pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Solve an instance and print a CSV record.
#[derive(Args)]
pub struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    #[command(flatten)]
    params: Params,
    /// Also run the exact oracle and fill the oracle and ratio columns.
    #[arg(long)]
    with_oracle: bool,
    /// Schedule output file.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write 0 in the ms column.
    #[arg(long)]
    no_timing: bool,
}

pub fn run(args: SolveArgs) -> Outcome<()> {
    let loaded = crate::read_instance(&args.instance)?
        .load()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let graph = graph_of(&loaded)?;
    let start = Instant::now();
    let solved = solve(&loaded, args.algo, &args.params)?;
    let ms = if args.no_timing {
        0
    } else {
        start.elapsed().as_millis()
    };
    let oracle = if args.with_oracle {
        Some(exact_broadcast_time(&graph, args.params.source)?.0)
    } else {
        None
    };
    if let Some(f) = solved.factor {
        eprintln!("guarantee factor {}/{} = {:.4}", f.num, f.den, f.as_f64());
    }
    let text = serde_json::to_string(&solved.schedule).expect("schedules serialise");
    if let Some(path) = &args.out {
        crate::emit(Some(path), &text)?;
    }
    let record = RunRecord {
        instance: instance_name(&args.instance),
        algo: args.algo.name(),
        epsilon: solved.epsilon,
        p: solved.p,
        k: solved.k,
        rounds: Ok(solved.rounds),
        lower_bound: broadcast_lower_bound(&graph, args.params.source)
            .map_err(|e| Failure::usage(e.to_string()))?,
        oracle,
        ms,
    };
    let mut w = csv_writer(None)?;
    w.write_record(record.fields())
        .and_then(|_| w.flush().map_err(Into::into))
        .map_err(|e| Failure::usage(e.to_string()))
}
