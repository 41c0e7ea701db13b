//! Acceptance criteria 1-9. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use telebroadcast::bandwidth::{dp_broadcast_general_source, DpConfig};
use telebroadcast::doublecover::ptas_double_prefix_cover;
use telebroadcast::generate::{
    necklace, random_bandwidth_graph, random_cover_set, random_kcycle_spec, random_kpath_spec,
    random_necklace, random_tree,
};
use telebroadcast::graph::{build_k_cycle, build_k_path, ordering_bandwidth};
use telebroadcast::oracle::{
    exact_broadcast_time, exact_broadcast_time_multi, exact_double_prefix_cover,
    exact_prefix_cover, tree_broadcast_time,
};
use telebroadcast::prefixcover::{ptas_prefix_cover, round_multiset, Factor, PtasParams};
use telebroadcast::reductions::{
    check_count_bound, evenodd_to_kcycle, kcycle_certificate_schedule, kcycle_count_cap,
    kpath_certificate_schedule, kpath_count_cap, rn3dm_to_evenodd, rn3dm_to_kpath, EvenOddInstance,
    Rn3dmInstance,
};
use telebroadcast::{validate_schedule, Graph, Source, Vertex};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn goldens() -> Outcome {
    let single = exact_prefix_cover(&[13, 8, 7, 6]).map_err(|e| e.to_string())?;
    ensure(single.m == 8, || {
        format!("cover {{13,8,7,6}} = {}", single.m)
    })?;
    let double = exact_double_prefix_cover(&[8, 4, 4, 2], 2).map_err(|e| e.to_string())?;
    ensure(double.m == 5, || {
        format!("double cover {{8,4,4,2}}, 2 = {}", double.m)
    })?;
    let s = [123, 67, 65, 45, 43, 43, 43, 18, 12, 12, 10, 6, 4, 4, 1, 1];
    let r = round_multiset(&s, 4);
    ensure(
        r.values() == [123, 43, 12, 4] && r.part_sizes() == [4, 4, 4, 4],
        || format!("rounded {:?} sizes {:?}", r.values(), r.part_sizes()),
    )?;
    Ok("cover 8, double cover 5, rounding exact".into())
}

fn reduction_goldens() -> Outcome {
    let w = Rn3dmInstance::new(vec![1, 3, 4, 4]).map_err(|e| e.to_string())?;
    let eo = rn3dm_to_evenodd(&w).map_err(|e| e.to_string())?;
    ensure(eo.c() == [13, 9, 7, 7], || {
        format!("even-odd image {:?}", eo.c())
    })?;

    let fig2 = EvenOddInstance::new(vec![7, 7, 9, 13]).map_err(|e| e.to_string())?;
    let kc = evenodd_to_kcycle(&fig2).map_err(|e| e.to_string())?;
    let sched = kcycle_certificate_schedule(&kc, &[4, 6, 2, 8], &[3, 1, 7, 5])
        .map_err(|e| e.to_string())?;
    let done = validate_schedule(&kc.kc.graph, &sched).map_err(|e| e.to_string())?;
    ensure(kc.kc.graph.n() == 37 && kc.target == 8 && done == 8, || {
        format!(
            "k-cycle n={} target={} schedule={done}",
            kc.kc.graph.n(),
            kc.target
        )
    })?;

    let kp = rn3dm_to_kpath(&w).map_err(|e| e.to_string())?;
    let sched =
        kpath_certificate_schedule(&kp, &[4, 1, 3, 2], &[3, 4, 1, 2]).map_err(|e| e.to_string())?;
    let done = validate_schedule(&kp.kp.graph, &sched).map_err(|e| e.to_string())?;
    ensure(kp.kp.graph.n() == 22 && kp.target == 5 && done == 5, || {
        format!(
            "k-path n={} target={} schedule={done}",
            kp.kp.graph.n(),
            kp.target
        )
    })?;
    Ok("{13,9,7,7}; n=37 at 8; n=22 at 5".into())
}

fn cover_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let spec = random_kcycle_spec(&mut rng, 18);
        let kc = build_k_cycle(&spec);
        let (t, _) = exact_broadcast_time(&kc.graph, kc.center).map_err(|e| e.to_string())?;
        let m = exact_prefix_cover(spec.lengths())
            .map_err(|e| e.to_string())?
            .m;
        ensure(t == m, || {
            format!("{:?}: broadcast {t}, cover {m}", spec.lengths())
        })?;
    }
    let mut checks = 0;
    for _ in 0..100 {
        let spec = random_kpath_spec(&mut rng, 16);
        let kp = build_k_path(&spec);
        let positive: Vec<u32> = spec.lengths().iter().copied().filter(|&l| l > 0).collect();
        for alpha in 1..=spec.st_distance() {
            let beta = alpha - 1;
            let sources = [
                Source {
                    vertex: kp.s,
                    release: 0,
                },
                Source {
                    vertex: kp.t,
                    release: beta,
                },
            ];
            let (t, _) =
                exact_broadcast_time_multi(&kp.graph, &sources).map_err(|e| e.to_string())?;
            let m = if positive.is_empty() {
                beta
            } else {
                exact_double_prefix_cover(&positive, beta)
                    .map_err(|e| e.to_string())?
                    .m
            };
            ensure(t == m, || {
                format!("{spec:?} alpha {alpha}: broadcast {t}, cover {m}")
            })?;
            checks += 1;
        }
    }
    Ok(format!(
        "200 k-cycles, 100 k-paths ({checks} alpha values), 0 mismatches"
    ))
}

/// The covering sweep shared by criteria 4 and 5.
fn sweep() -> Vec<(Vec<u32>, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    (0..200)
        .map(|_| (random_cover_set(&mut rng, 8, 30), rng.gen_range(0..=5)))
        .collect()
}

fn ptas_sweep() -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    for (s, beta) in sweep() {
        let opt = exact_prefix_cover(&s).map_err(|e| e.to_string())?.m;
        let opt2 = exact_double_prefix_cover(&s, beta)
            .map_err(|e| e.to_string())?
            .m;
        for p in 2..=4 {
            let single = ptas_prefix_cover(&s, PtasParams::new(p)).map_err(|e| e.to_string())?;
            single.witness.validate(&s).map_err(|e| e.to_string())?;
            let m = single.witness.m;
            ensure(Factor::single_cover(p).admits(m as u64, opt as u64), || {
                format!("{s:?} p={p}: {m} vs {opt}")
            })?;
            let double = ptas_double_prefix_cover(&s, beta, PtasParams::new(p))
                .map_err(|e| e.to_string())?;
            double.witness.validate(&s).map_err(|e| e.to_string())?;
            let m2 = double.witness.m;
            ensure(
                Factor::double_cover(p).admits(m2 as u64, opt2 as u64),
                || format!("{s:?} beta={beta} p={p}: {m2} vs {opt2}"),
            )?;
            worst.0 = worst.0.max(m as f64 / opt as f64);
            worst.1 = worst.1.max(m2 as f64 / opt2 as f64);
        }
    }
    Ok(format!(
        "600 runs each, worst ratios {:.3} single / {:.3} double",
        worst.0, worst.1
    ))
}

fn rounding_bounds() -> Outcome {
    for (s, beta) in sweep() {
        let opt = exact_prefix_cover(&s).map_err(|e| e.to_string())?.m;
        let opt2 = exact_double_prefix_cover(&s, beta)
            .map_err(|e| e.to_string())?
            .m;
        for p in 2..=4 {
            let rounded = round_multiset(&s, p).expand();
            let parts = s.len().div_ceil(p) as u32;
            let r = exact_prefix_cover(&rounded).map_err(|e| e.to_string())?.m;
            ensure(r <= opt + 2 * parts, || {
                format!("{s:?} p={p}: {r} vs {opt}")
            })?;
            let r2 = exact_double_prefix_cover(&rounded, beta)
                .map_err(|e| e.to_string())?
                .m;
            ensure(r2 <= opt2 + parts, || {
                format!("{s:?} beta={beta} p={p}: {r2} vs {opt2}")
            })?;
        }
    }
    Ok("600 single and 600 double checks, 0 violations".into())
}

fn bandwidth_corpus() -> Vec<(Graph, Vec<Vertex>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut out: Vec<(Graph, Vec<Vertex>)> = (1..=14)
        .map(|n| (Graph::path(n), (0..n).collect()))
        .collect();
    out.extend((3..=14).map(|n| necklace(&[n]).expect("cycle")));
    out.extend((0..34).map(|_| random_necklace(&mut rng, 14)));
    for _ in 0..40 {
        let n = rng.gen_range(2..=14);
        let density = rng.gen_range(0.2..0.9);
        out.push(random_bandwidth_graph(&mut rng, n, 2, density));
    }
    out
}

fn bandwidth_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let corpus = bandwidth_corpus();
    let mut runs = 0;
    for (g, ord) in &corpus {
        let k = ordering_bandwidth(g, ord)
            .map_err(|e| e.to_string())?
            .max(1);
        ensure(k <= 2, || format!("ordering of bandwidth {k}"))?;
        for source in [ord[0], rng.gen_range(0..g.n())] {
            let out = dp_broadcast_general_source(g, ord, k, source, &DpConfig::default())
                .map_err(|e| e.to_string())?;
            let (opt, _) = exact_broadcast_time(g, source).map_err(|e| e.to_string())?;
            let valid = validate_schedule(g, &out.schedule);
            ensure(out.rounds == opt && valid == Ok(opt), || {
                format!(
                    "{:?} from {source}: dp {} vs oracle {opt}",
                    g.edges(),
                    out.rounds
                )
            })?;
            runs += 1;
        }
    }
    Ok(format!(
        "{} graphs, {runs} sources, 0 mismatches",
        corpus.len()
    ))
}

fn tree_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(1..=14);
        let tree = random_tree(&mut rng, n);
        let source = rng.gen_range(0..n);
        let (t, sched) = tree_broadcast_time(&tree, source).map_err(|e| e.to_string())?;
        let (opt, _) = exact_broadcast_time(&tree, source).map_err(|e| e.to_string())?;
        ensure(
            t == opt && validate_schedule(&tree, &sched) == Ok(t),
            || format!("{:?} from {source}: {t} vs {opt}", tree.edges()),
        )?;
    }
    Ok("200 trees, 0 mismatches".into())
}

fn counting_bounds() -> Outcome {
    let mut schedules = 0;
    for c in [vec![3], vec![3, 7], vec![5, 5], vec![7, 3]] {
        let eo = EvenOddInstance::new(c).map_err(|e| e.to_string())?;
        let red = evenodd_to_kcycle(&eo).map_err(|e| e.to_string())?;
        let (_, sched) =
            exact_broadcast_time(&red.kc.graph, red.source()).map_err(|e| e.to_string())?;
        check_count_bound(&sched, red.kc.graph.n(), kcycle_count_cap).map_err(|e| e.to_string())?;
        schedules += 1;
    }
    for m in 1..=3usize {
        for code in 0..6u32.pow(m as u32) {
            let w: Vec<u32> = (0..m).map(|i| code / 6u32.pow(i as u32) % 6 + 1).collect();
            let Ok(inst) = Rn3dmInstance::new(w) else {
                continue;
            };
            let Ok(red) = rn3dm_to_kpath(&inst) else {
                continue;
            };
            let (_, sched) =
                exact_broadcast_time(&red.kp.graph, red.source()).map_err(|e| e.to_string())?;
            check_count_bound(&sched, red.kp.graph.n(), kpath_count_cap)
                .map_err(|e| e.to_string())?;
            schedules += 1;
        }
    }
    Ok(format!("{schedules} oracle schedules, 0 violations"))
}

fn cli(args: &[&str], dir: &Path) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_telebroadcast"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "`{}` exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(String::from_utf8_lossy(&out.stdout).trim().to_string())
}

fn read_target(path: &Path) -> Result<String, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    Ok(v["target"].to_string())
}

fn end_to_end() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    cli(
        &["generate", "rn3dm", "--w", "1,3,4,4", "-o", "w.json"],
        dir,
    )?;

    cli(
        &["reduce", "w.json", "--to", "evenodd", "-o", "eo.json"],
        dir,
    )?;
    cli(
        &[
            "reduce",
            "eo.json",
            "--to",
            "kcycle",
            "-o",
            "fig2.json",
            "--target-out",
            "fig2.target.json",
        ],
        dir,
    )?;
    cli(
        &[
            "solve",
            "fig2.json",
            "--algo",
            "kcycle-ptas",
            "--epsilon",
            "0.5",
            "-o",
            "fig2.sched.json",
        ],
        dir,
    )?;
    let fig2 = cli(&["validate", "fig2.json", "fig2.sched.json"], dir)?;
    let target2 = read_target(&dir.join("fig2.target.json"))?;
    ensure(fig2 == "8" && target2 == "8", || {
        format!("fig 2: schedule {fig2}, target {target2}")
    })?;

    cli(
        &[
            "reduce",
            "w.json",
            "--to",
            "kpath",
            "-o",
            "fig3.json",
            "--target-out",
            "fig3.target.json",
        ],
        dir,
    )?;
    cli(
        &[
            "solve",
            "fig3.json",
            "--algo",
            "kpath-ptas",
            "--epsilon",
            "0.5",
            "-o",
            "fig3.sched.json",
        ],
        dir,
    )?;
    let fig3 = cli(&["validate", "fig3.json", "fig3.sched.json"], dir)?;
    let target3 = read_target(&dir.join("fig3.target.json"))?;
    ensure(fig3 == "5" && target3 == "5", || {
        format!("fig 3: schedule {fig3}, target {target3}")
    })?;

    let mut tables = Vec::new();
    for run in ["a", "b"] {
        std::fs::create_dir(dir.join(run)).map_err(|e| e.to_string())?;
        for seed in 0..8 {
            let file = format!("{run}/kc{seed}.json");
            cli(
                &[
                    "generate",
                    "kcycle",
                    "--seed",
                    &seed.to_string(),
                    "-o",
                    &file,
                ],
                dir,
            )?;
        }
        tables.push(cli(
            &[
                "bench",
                run,
                "--algos",
                "oracle,kcycle-ptas",
                "--p",
                "3",
                "--no-timing",
            ],
            dir,
        )?);
    }
    ensure(
        tables[0] == tables[1] && tables[0].lines().count() == 17,
        || {
            format!(
                "bench outputs differ or are short:\n{}\n---\n{}",
                tables[0], tables[1]
            )
        },
    )?;
    Ok("fig 2 -> 8, fig 3 -> 5, bench CSV identical across runs".into())
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "worked-example goldens",
            limit: secs(1),
            run: goldens,
        },
        Criterion {
            id: 2,
            name: "reduction goldens",
            limit: secs(1),
            run: reduction_goldens,
        },
        Criterion {
            id: 3,
            name: "covering-broadcast equivalence",
            limit: secs(300),
            run: cover_equivalence,
        },
        Criterion {
            id: 4,
            name: "PTAS guarantee sweep",
            limit: secs(300),
            run: ptas_sweep,
        },
        Criterion {
            id: 5,
            name: "rounding bounds",
            limit: None,
            run: rounding_bounds,
        },
        Criterion {
            id: 6,
            name: "bandwidth DP exactness",
            limit: secs(600),
            run: bandwidth_exactness,
        },
        Criterion {
            id: 7,
            name: "tree solver exactness",
            limit: secs(120),
            run: tree_exactness,
        },
        Criterion {
            id: 8,
            name: "counting-bound validators",
            limit: None,
            run: counting_bounds,
        },
        Criterion {
            id: 9,
            name: "end-to-end CLI",
            limit: None,
            run: end_to_end,
        },
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("over the {limit:?} limit")),
            (r, _) => r,
        };
        let (status, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {} ({}): {status} - {detail} [{took:.2?}]",
            c.id, c.name
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
