//! Seeded instance generators for tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, GraphError, KCycleSpec, KPathSpec, Vertex};
use crate::reductions::{ReductionError, Rn3dmInstance};

/// Random k-cycle spec with at most `max_n` vertices: up to 6 cycles of
/// 2..=9 non-center vertices each, drawn uniformly within the budget.
pub fn random_kcycle_spec<R: Rng>(rng: &mut R, max_n: usize) -> KCycleSpec {
    assert!(max_n >= 3, "a k-cycle graph needs at least 3 vertices");
    let mut budget = max_n - 1;
    let k = rng.gen_range(1..=(budget / 2).min(6));
    let mut lengths = Vec::with_capacity(k);
    for i in 0..k {
        let reserve = 2 * (k - i - 1);
        let len = rng.gen_range(2..=(budget - reserve).min(9));
        budget -= len;
        lengths.push(len as u32);
    }
    KCycleSpec::new(lengths).expect("lengths are at least 2")
}

/// Random k-path spec with at most `max_n` vertices: up to 5 paths of
/// 0..=7 internal vertices; at most one direct s-t connection.
pub fn random_kpath_spec<R: Rng>(rng: &mut R, max_n: usize) -> KPathSpec {
    assert!(max_n >= 3, "a k-path graph needs at least 3 vertices");
    let mut budget = max_n - 2;
    let k = rng.gen_range(1..=5);
    let mut lengths = Vec::with_capacity(k);
    let mut direct = false;
    for _ in 0..k {
        let lo = u32::from(direct);
        let hi = budget.min(7) as u32;
        if hi < lo.max(1) {
            break;
        }
        let len = rng.gen_range(lo..=hi);
        direct |= len == 0;
        budget -= len as usize;
        lengths.push(len);
    }
    if lengths.is_empty() {
        lengths.push(1);
    }
    let st_edge = !direct && rng.gen_bool(0.3);
    KPathSpec::new(lengths, st_edge).expect("at most one direct connection")
}

/// Chain of cycles where consecutive cycles share one vertex. Cycle `j` has
/// `sizes[j] >= 3` vertices. Returns the graph and an ordering of bandwidth
/// at most 2 (the two arcs of every cycle are interleaved).
pub fn necklace(sizes: &[usize]) -> Result<(Graph, Vec<Vertex>), GraphError> {
    if sizes.is_empty() {
        return Err(GraphError::EmptyFamily);
    }
    if let Some((index, &len)) = sizes.iter().enumerate().find(|(_, &c)| c < 3) {
        return Err(GraphError::CycleTooShort {
            index,
            len: len as u32,
        });
    }
    let mut edges = Vec::new();
    let mut joint = 0;
    let mut next = 1;
    for &c in sizes {
        let inner = c - 2;
        let (p, q) = (inner.div_ceil(2), inner / 2);
        // Interleaved labels: a_i = joint + 2i - 1, b_i = joint + 2i.
        let a: Vec<Vertex> = (0..p).map(|i| next + 2 * i).collect();
        let b: Vec<Vertex> = (0..q).map(|i| next + 2 * i + 1).collect();
        let end = next + inner;
        for arm in [&a, &b] {
            let mut prev = joint;
            for &v in arm.iter() {
                edges.push((prev, v));
                prev = v;
            }
            edges.push((prev, end));
        }
        joint = end;
        next = end + 1;
    }
    let g = Graph::new(next, edges)?;
    Ok((g, (0..next).collect()))
}

/// Random necklace with at most `max_n` vertices (cycles of 3..=7).
pub fn random_necklace<R: Rng>(rng: &mut R, max_n: usize) -> (Graph, Vec<Vertex>) {
    assert!(max_n >= 3, "a necklace needs at least 3 vertices");
    let mut budget = max_n - 1;
    let mut sizes = Vec::new();
    while budget >= 2 {
        let c = rng.gen_range(3..=(budget + 1).min(7));
        sizes.push(c);
        budget -= c - 1;
        if rng.gen_bool(0.25) {
            break;
        }
    }
    necklace(&sizes).expect("sizes are at least 3")
}

/// Applies a uniformly random relabelling. The returned ordering lists the
/// new labels in the original vertex order.
fn relabel<R: Rng>(rng: &mut R, n: usize, edges: &[(Vertex, Vertex)]) -> (Graph, Vec<Vertex>) {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let g = Graph::new(n, edges.iter().map(|&(u, v)| (perm[u], perm[v])))
        .expect("relabelling keeps the graph simple");
    (g, perm)
}

/// Connected graph of bandwidth at most `k`: all edges `(i, i+1)` of the
/// ordering, each edge `(i, i+d)` with `2 <= d <= k` kept with probability
/// `density`, then relabelled at random. Returns the graph and its ordering.
pub fn random_bandwidth_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    density: f64,
) -> (Graph, Vec<Vertex>) {
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (i - 1, i)).collect();
    for i in 0..n {
        for d in 2..=k {
            if i + d < n && rng.gen_bool(density) {
                edges.push((i, i + d));
            }
        }
    }
    relabel(rng, n, &edges)
}

/// Random recursive tree (vertex `i` attaches to a uniform earlier vertex),
/// relabelled at random.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    relabel(rng, n, &edges).0
}

/// Random multiset of `1..=max_len` numbers in `1..=max_value`.
pub fn random_cover_set<R: Rng>(rng: &mut R, max_len: usize, max_value: u32) -> Vec<u32> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(1..=max_value)).collect()
}

/// RN3DM instance with `m` elements and `e` drawn from `2m+1..=max_e`
/// (raised to `2m+1` if smaller). A planted instance is built from random
/// permutations and is solvable; otherwise one unit is moved between two
/// random weights, which keeps the divisibility condition and usually
/// destroys solvability. Every weight stays in `1..=e-2`, so both
/// reductions apply.
pub fn random_rn3dm<R: Rng>(
    rng: &mut R,
    m: usize,
    max_e: u32,
    planted: bool,
) -> Result<Rn3dmInstance, ReductionError> {
    if m == 0 {
        return Err(ReductionError::Empty);
    }
    let lo = 2 * m as u32 + 1;
    let e = rng.gen_range(lo..=max_e.max(lo));
    let mut lambda: Vec<u32> = (1..=m as u32).collect();
    let mut mu = lambda.clone();
    lambda.shuffle(rng);
    mu.shuffle(rng);
    let mut w: Vec<u32> = (0..m).map(|i| e - lambda[i] - mu[i]).collect();
    if !planted && m >= 2 {
        let donors: Vec<usize> = (0..m).filter(|&i| w[i] > 1).collect();
        if let Some(&from) = donors.choose(rng) {
            let takers: Vec<usize> = (0..m).filter(|&i| i != from && w[i] + 2 < e).collect();
            if let Some(&to) = takers.choose(rng) {
                w[from] -= 1;
                w[to] += 1;
            }
        }
    }
    Rn3dmInstance::new(w)
}
