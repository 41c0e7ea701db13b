//! The tree solver agrees with the state-space oracle on random trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use telebroadcast::generate::random_tree;
use telebroadcast::oracle::{exact_broadcast_time, tree_broadcast_time};
use telebroadcast::validate_schedule;

#[test]
fn tree_solver_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let n = rng.gen_range(1..=14);
        let tree = random_tree(&mut rng, n);
        let source = rng.gen_range(0..n);
        let (t, sched) = tree_broadcast_time(&tree, source).unwrap();
        assert_eq!(validate_schedule(&tree, &sched), Ok(t));
        assert_eq!(t, exact_broadcast_time(&tree, source).unwrap().0);
    }
}
