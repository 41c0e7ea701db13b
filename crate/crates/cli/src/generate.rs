use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use telebroadcast::generate::{
    necklace, random_bandwidth_graph, random_kcycle_spec, random_kpath_spec, random_necklace,
    random_rn3dm,
};
use telebroadcast::graph::{KCycleSpec, KPathSpec};
use telebroadcast::io::Instance;
use telebroadcast::reductions::{rn3dm_to_evenodd, EvenOddInstance, Rn3dmInstance};

use crate::failure::{Failure, Outcome};

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    Kcycle,
    Kpath,
    Necklace,
    RandomBandwidth,
    Rn3dm,
    Evenodd,
}

/// Write an instance file.
///
/// Explicit values (--lengths, --cycles, --w, --c) are used as given.
/// Otherwise the instance is drawn from a ChaCha8 stream seeded by --seed:
/// kcycle: 1..=6 cycles of 2..=9 vertices within --max-n (default 18);
/// kpath: 1..=5 paths of 0..=7 internal vertices within --max-n (default 16),
/// s-t edge with probability 0.3;
/// necklace: cycles of 3..=7 vertices within --max-n (default 14);
/// random-bandwidth: the path 0..n plus each (i, i+d), 2 <= d <= k, with
/// probability --density, randomly relabelled;
/// rn3dm: e uniform in 2m+1..=--max-e, weights from two uniform random
/// permutations (solvable), with --perturb moving one unit between two
/// weights; evenodd: the even-odd image of such an rn3dm instance.
#[derive(Args)]
pub struct GenerateArgs {
    family: Family,
    #[arg(long, value_delimiter = ',')]
    lengths: Option<Vec<u32>>,
    #[arg(long)]
    st_edge: bool,
    #[arg(long, value_delimiter = ',')]
    cycles: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    w: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    c: Option<Vec<u32>>,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 12)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 20)]
    max_e: u32,
    #[arg(long)]
    perturb: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn bad<E: std::fmt::Display>(e: E) -> Failure {
    Failure::usage(e.to_string())
}

pub fn build(args: &GenerateArgs) -> Outcome<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let max_n = |default: usize| {
        let n = args.max_n.unwrap_or(default);
        if n < 3 {
            Err(Failure::usage("--max-n must be at least 3"))
        } else {
            Ok(n)
        }
    };
    let rn3dm = |rng: &mut ChaCha8Rng| -> Outcome<Rn3dmInstance> {
        match &args.w {
            Some(w) => Rn3dmInstance::new(w.clone()).map_err(bad),
            None => random_rn3dm(rng, args.m, args.max_e, !args.perturb).map_err(bad),
        }
    };
    Ok(match args.family {
        Family::Kcycle => match &args.lengths {
            Some(l) => Instance::from_kcycle(&KCycleSpec::new(l.clone()).map_err(bad)?),
            None => Instance::from_kcycle(&random_kcycle_spec(&mut rng, max_n(18)?)),
        },
        Family::Kpath => match &args.lengths {
            Some(l) => Instance::from_kpath(&KPathSpec::new(l.clone(), args.st_edge).map_err(bad)?),
            None => Instance::from_kpath(&random_kpath_spec(&mut rng, max_n(16)?)),
        },
        Family::Necklace => {
            let (g, ord) = match &args.cycles {
                Some(sizes) => necklace(sizes).map_err(bad)?,
                None => random_necklace(&mut rng, max_n(14)?),
            };
            Instance::from_graph(&g, Some(ord))
        }
        Family::RandomBandwidth => {
            if args.n == 0 || !(0.0..=1.0).contains(&args.density) {
                return Err(Failure::usage("need --n >= 1 and --density in [0, 1]"));
            }
            let (g, ord) = random_bandwidth_graph(&mut rng, args.n, args.k.max(1), args.density);
            Instance::from_graph(&g, Some(ord))
        }
        Family::Rn3dm => Instance::Rn3dm {
            w: rn3dm(&mut rng)?.w().to_vec(),
        },
        Family::Evenodd => {
            let eo = match &args.c {
                Some(c) => EvenOddInstance::new(c.clone()).map_err(bad)?,
                None => rn3dm_to_evenodd(&rn3dm(&mut rng)?).map_err(bad)?,
            };
            Instance::Evenodd { c: eo.c().to_vec() }
        }
    })
}

pub fn run(args: GenerateArgs) -> Outcome<()> {
    let inst = build(&args)?;
    crate::emit(args.out.as_deref(), &inst.to_json())
}
