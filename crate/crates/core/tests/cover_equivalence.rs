//! Broadcast time from the center of a k-cycle graph equals the prefix
//! covering optimum of its cycle lengths; with a late second source on a
//! k-path graph it equals the double covering optimum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use telebroadcast::graph::{build_k_cycle, build_k_path, KCycleSpec, KPathSpec};
use telebroadcast::oracle::{
    exact_broadcast_time, exact_broadcast_time_multi, exact_double_prefix_cover, exact_prefix_cover,
};
use telebroadcast::{validate_schedule, Source};

fn random_cycle_spec(rng: &mut ChaCha8Rng, max_n: usize) -> KCycleSpec {
    let mut budget = max_n - 1;
    let mut lengths = Vec::new();
    let k = rng.gen_range(1..=(budget / 2).min(6));
    for i in 0..k {
        let reserve = 2 * (k - i - 1);
        let len = rng.gen_range(2..=(budget - reserve).min(9));
        budget -= len;
        lengths.push(len as u32);
    }
    KCycleSpec::new(lengths).unwrap()
}

fn random_path_spec(rng: &mut ChaCha8Rng, max_n: usize) -> KPathSpec {
    let mut budget = max_n - 2;
    let k = rng.gen_range(1..=5);
    let mut lengths = Vec::new();
    for _ in 0..k {
        if budget == 0 {
            break;
        }
        let len = rng.gen_range(1..=budget.min(7));
        budget -= len;
        lengths.push(len as u32);
    }
    // At most one direct s-t connection: a zero-length path or the edge flag.
    match rng.gen_range(0..3) {
        0 => {
            lengths.push(0);
            KPathSpec::new(lengths, false).unwrap()
        }
        1 => KPathSpec::new(lengths, true).unwrap(),
        _ => KPathSpec::new(lengths, false).unwrap(),
    }
}

#[test]
fn k_cycle_center_broadcast_equals_prefix_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..200 {
        let spec = random_cycle_spec(&mut rng, 18);
        let kc = build_k_cycle(&spec);
        let (t, sched) = exact_broadcast_time(&kc.graph, kc.center).unwrap();
        assert_eq!(validate_schedule(&kc.graph, &sched), Ok(t));
        assert_eq!(t, exact_prefix_cover(spec.lengths()).unwrap().m, "{spec:?}");
    }
}

#[test]
fn k_path_late_source_equals_double_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut checks = 0;
    for _ in 0..100 {
        let spec = random_path_spec(&mut rng, 16);
        let kp = build_k_path(&spec);
        let positive: Vec<u32> = spec.lengths().iter().copied().filter(|&l| l > 0).collect();
        for alpha in 1..=spec.st_distance() {
            let release = alpha - 1;
            let sources = [
                Source {
                    vertex: kp.s,
                    release: 0,
                },
                Source {
                    vertex: kp.t,
                    release,
                },
            ];
            let (t, sched) = exact_broadcast_time_multi(&kp.graph, &sources).unwrap();
            assert_eq!(validate_schedule(&kp.graph, &sched), Ok(t));
            let expected = if positive.is_empty() {
                release
            } else {
                exact_double_prefix_cover(&positive, release).unwrap().m
            };
            assert_eq!(t, expected, "{spec:?} release {release}");
            checks += 1;
        }
    }
    assert!(checks >= 100);
}
