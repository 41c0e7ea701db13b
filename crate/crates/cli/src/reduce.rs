use std::path::PathBuf;

use clap::{Args, ValueEnum};

use telebroadcast::io::{Instance, Loaded, Target};
use telebroadcast::reductions::{
    evenodd_to_kcycle, evenodd_to_rn3dm, kcycle_certificate_schedule, kpath_certificate_schedule,
    rn3dm_certificate_to_evenodd, rn3dm_to_evenodd, rn3dm_to_kpath, solve_rn3dm_small,
    EvenOddInstance, Rn3dmInstance,
};
use telebroadcast::BroadcastSchedule;

use crate::failure::{Failure, Outcome};

#[derive(Clone, Copy, ValueEnum)]
pub enum Goal {
    Evenodd,
    Kcycle,
    Kpath,
}

/// Apply a hardness reduction: rn3dm -> evenodd | kcycle | kpath, or
/// evenodd -> kcycle. Broadcast targets go to --target-out as {"target":T}.
#[derive(Args)]
pub struct ReduceArgs {
    instance: PathBuf,
    #[arg(long, value_enum)]
    to: Goal,
    /// Reduced instance output (default: standard output).
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long)]
    target_out: Option<PathBuf>,
    /// Solve the source instance exhaustively (m <= 7) and write the
    /// certificate schedule of the reduced broadcast instance.
    #[arg(long)]
    certificate_out: Option<PathBuf>,
}

struct Reduced {
    instance: Instance,
    target: Option<u32>,
    certificate: Option<Outcome<BroadcastSchedule>>,
}

fn no_certificate() -> Failure {
    Failure::invalid("source instance has no certificate")
}

fn certified_evenodd(eo: &EvenOddInstance) -> Outcome<(Vec<u32>, Vec<u32>)> {
    let (l, u) = solve_rn3dm_small(&evenodd_to_rn3dm(eo)?)?.ok_or_else(no_certificate)?;
    Ok(rn3dm_certificate_to_evenodd(&l, &u))
}

fn kcycle_from(eo: &EvenOddInstance, certify: bool) -> Outcome<Reduced> {
    let red = evenodd_to_kcycle(eo)?;
    let certificate = certify.then(|| {
        let (a, b) = certified_evenodd(eo)?;
        Ok(kcycle_certificate_schedule(&red, &a, &b)?)
    });
    Ok(Reduced {
        instance: Instance::from_kcycle(&red.spec),
        target: Some(red.target),
        certificate,
    })
}

fn from_rn3dm(w: &Rn3dmInstance, goal: Goal, certify: bool) -> Outcome<Reduced> {
    Ok(match goal {
        Goal::Evenodd => Reduced {
            instance: Instance::Evenodd {
                c: rn3dm_to_evenodd(w)?.c().to_vec(),
            },
            target: None,
            certificate: None,
        },
        Goal::Kcycle => kcycle_from(&rn3dm_to_evenodd(w)?, certify)?,
        Goal::Kpath => {
            let red = rn3dm_to_kpath(w)?;
            let certificate = certify.then(|| {
                let (l, u) = solve_rn3dm_small(w)?.ok_or_else(no_certificate)?;
                Ok(kpath_certificate_schedule(&red, &l, &u)?)
            });
            Reduced {
                instance: Instance::from_kpath(&red.spec),
                target: Some(red.target),
                certificate,
            }
        }
    })
}

pub fn run(args: ReduceArgs) -> Outcome<()> {
    let loaded = crate::read_instance(&args.instance)?
        .load()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let certify = args.certificate_out.is_some();
    let reduced = match (&loaded, args.to) {
        (Loaded::Rn3dm(w), goal) => from_rn3dm(w, goal, certify)?,
        (Loaded::EvenOdd(eo), Goal::Kcycle) => kcycle_from(eo, certify)?,
        _ => {
            return Err(Failure::usage(
                "supported: rn3dm -> evenodd|kcycle|kpath, evenodd -> kcycle",
            ))
        }
    };
    if reduced.certificate.is_none() && certify {
        return Err(Failure::usage(
            "certificates exist only for broadcast targets",
        ));
    }
    crate::emit(args.out.as_deref(), &reduced.instance.to_json())?;
    if let Some(target) = reduced.target {
        eprintln!("target {target}");
        if let Some(path) = &args.target_out {
            let text = serde_json::to_string(&Target { target }).expect("serialisable");
            crate::emit(Some(path), &text)?;
        }
    }
    if let (Some(path), Some(cert)) = (&args.certificate_out, reduced.certificate) {
        let text = serde_json::to_string(&cert?).expect("schedules serialise");
        crate::emit(Some(path), &text)?;
    }
    Ok(())
}
