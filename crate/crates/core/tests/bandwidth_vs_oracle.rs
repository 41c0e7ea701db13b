//! The bounded-bandwidth DP is exact: it matches the state-space oracle on
//! paths, cycles, necklaces and random bandwidth-2 graphs with up to 14
//! vertices, from several sources each.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use telebroadcast::bandwidth::{dp_broadcast_general_source, state_count_bound, DpConfig};
use telebroadcast::generate::{necklace, random_bandwidth_graph, random_necklace};
use telebroadcast::graph::ordering_bandwidth;
use telebroadcast::oracle::exact_broadcast_time;
use telebroadcast::{validate_schedule, Graph, Vertex};

fn corpus() -> Vec<(String, Graph, Vec<Vertex>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for n in 1..=14 {
        out.push((format!("path{n}"), Graph::path(n), (0..n).collect()));
    }
    for n in 3..=14 {
        let (g, ord) = necklace(&[n]).unwrap();
        out.push((format!("cycle{n}"), g, ord));
    }
    for i in 0..34 {
        let (g, ord) = random_necklace(&mut rng, 14);
        out.push((format!("necklace{i}"), g, ord));
    }
    for i in 0..40 {
        let n = rng.gen_range(2..=14);
        let density = rng.gen_range(0.2..0.9);
        let (g, ord) = random_bandwidth_graph(&mut rng, n, 2, density);
        out.push((format!("band{i}"), g, ord));
    }
    out
}

#[test]
fn dp_matches_oracle_on_bandwidth_two_corpus() {
    let graphs = corpus();
    assert!(graphs.len() >= 100);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    for (name, g, ord) in &graphs {
        let k = ordering_bandwidth(g, ord).unwrap().max(1);
        assert!(k <= 2, "{name}");
        let mut sources = vec![ord[0], rng.gen_range(0..g.n())];
        sources.dedup();
        for source in sources {
            let out = dp_broadcast_general_source(g, ord, k, source, &DpConfig::default()).unwrap();
            let (opt, _) = exact_broadcast_time(g, source).unwrap();
            assert_eq!(out.rounds, opt, "{name} from {source}");
            assert_eq!(
                validate_schedule(g, &out.schedule),
                Ok(opt),
                "{name} from {source}"
            );
            let bound = state_count_bound(k, g.n());
            assert!(out.row_sizes.iter().all(|&r| (r as u128) <= bound));
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

#[test]
fn orderings_wider_than_k_are_rejected() {
    for n in 3..=10 {
        let g = Graph::cycle(n);
        let ord: Vec<Vertex> = (0..n).collect();
        let k = ordering_bandwidth(&g, &ord).unwrap();
        if k > 2 {
            assert!(dp_broadcast_general_source(&g, &ord, 2, 0, &DpConfig::default()).is_err());
        }
    }
}
