//! Randomised invariants: rounding dominates its input, covering optima are
//! monotone, and every solver emits a schedule the validator accepts.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use telebroadcast::bandwidth::dp_broadcast;
use telebroadcast::doublecover::ptas_double_prefix_cover;
use telebroadcast::generate::{random_bandwidth_graph, random_tree};
use telebroadcast::graph::{build_k_cycle, KCycleSpec};
use telebroadcast::oracle::{exact_double_prefix_cover, exact_prefix_cover, tree_broadcast_time};
use telebroadcast::prefixcover::{
    kcycle_broadcast_ptas, ptas_prefix_cover, round_multiset, round_range, PtasParams,
};
use telebroadcast::validate_schedule;

fn cover_set() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=30, 1..=8)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn rounding_dominates_elementwise(s in prop::collection::vec(1u32..=200, 1..=40), p in 1usize..=8) {
        let r = round_multiset(&s, p);
        let mut sorted = s.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let expanded = r.expand();
        prop_assert_eq!(expanded.len(), s.len());
        prop_assert!(expanded.iter().zip(&sorted).all(|(x, y)| x >= y));
        prop_assert!(r.values().len() <= p);
    }

    #[test]
    fn rounded_range_dominates(m in 1u32..=300, p in 1usize..=8) {
        let r = round_range(m, p);
        let expanded = r.expand();
        prop_assert_eq!(expanded.len(), m as usize);
        prop_assert!(expanded.iter().zip((1..=m).rev()).all(|(&x, y)| x >= y));
    }

    #[test]
    fn cover_optimum_is_monotone(s in cover_set(), extra in 1u32..=30) {
        let base = exact_prefix_cover(&s).unwrap().m;
        let mut bigger = s.clone();
        bigger.push(extra);
        prop_assert!(exact_prefix_cover(&bigger).unwrap().m >= base);
        let mut raised = s.clone();
        raised[0] += 1;
        prop_assert!(exact_prefix_cover(&raised).unwrap().m >= base);
    }

    #[test]
    fn double_cover_optimum_grows_with_beta(s in cover_set(), beta in 0u32..6) {
        let a = exact_double_prefix_cover(&s, beta).unwrap().m;
        let b = exact_double_prefix_cover(&s, beta + 1).unwrap().m;
        prop_assert!(a <= b && b <= a + 1);
    }

    #[test]
    fn ptas_witnesses_validate(s in cover_set(), p in 1usize..=5, beta in 0u32..4) {
        let single = ptas_prefix_cover(&s, PtasParams::new(p)).unwrap();
        prop_assert!(single.witness.validate(&s).is_ok());
        prop_assert!(single.witness.m <= single.rounded_m + single.rounded_m.div_ceil(p as u32));
        let double = ptas_double_prefix_cover(&s, beta, PtasParams::new(p)).unwrap();
        prop_assert!(double.witness.validate(&s).is_ok());
    }

    #[test]
    fn kcycle_schedules_validate(lengths in prop::collection::vec(2u32..=7, 1..=4), p in 1usize..=4, pick in any::<prop::sample::Index>()) {
        let spec = KCycleSpec::new(lengths).unwrap();
        let kc = build_k_cycle(&spec);
        let v = pick.index(kc.graph.n());
        let sched = kcycle_broadcast_ptas(&spec, v, PtasParams::new(p)).unwrap();
        prop_assert!(validate_schedule(&kc.graph, &sched).is_ok());
    }

    #[test]
    fn tree_and_dp_schedules_validate(seed in any::<u64>(), n in 1usize..=30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng, n);
        let (t, sched) = tree_broadcast_time(&tree, 0).unwrap();
        prop_assert_eq!(validate_schedule(&tree, &sched), Ok(t));
        let (g, ord) = random_bandwidth_graph(&mut rng, n, 2, 0.5);
        let (t, sched) = dp_broadcast(&g, &ord, 2, ord[n / 2]).unwrap();
        prop_assert_eq!(validate_schedule(&g, &sched), Ok(t));
    }
}
