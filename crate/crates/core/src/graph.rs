//! Undirected simple graphs, the two integer-described families (k-cycle and
//! k-path graphs), bandwidth orderings and the standard broadcast lower bound.

use std::collections::VecDeque;

use thiserror::Error;

/// Vertices are dense indices `0..n`.
pub type Vertex = usize;
/// Broadcast rounds. Round 0 is the moment the source holds the message.
pub type Round = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("cycle {index} has {len} non-center vertices, at least 2 are required")]
    CycleTooShort { index: usize, len: u32 },
    #[error("k-path description would create a second s-t edge")]
    DuplicateStEdge,
    #[error("family description has no cycles/paths")]
    EmptyFamily,
    #[error("ordering is not a permutation of the vertex set")]
    NotPermutation,
    #[error("graph does not have the expected {0} structure")]
    NotFamily(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a simple undirected graph. Edges are stored normalised as
    /// `(min, max)` and sorted; adjacency lists are sorted.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut normalised = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            normalised.push((u.min(v), u.max(v)));
        }
        normalised.sort_unstable();
        if let Some(w) = normalised.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalised {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges: normalised,
            adjacency,
        })
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple")
    }

    /// Star `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph edges are simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.n
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// BFS hop distances from a set of start vertices; `None` for unreachable.
    pub fn distances_from_set(&self, starts: &[Vertex]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        for &s in starts {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances_from(&self, source: Vertex) -> Vec<Option<u32>> {
        self.distances_from_set(&[source])
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn ensure_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub fn eccentricity(&self, source: Vertex) -> Result<u32, GraphError> {
        self.distances_from(source)
            .into_iter()
            .try_fold(0, |acc, d| {
                d.map(|d| acc.max(d)).ok_or(GraphError::Disconnected)
            })
    }
}

/// `max(ceil(log2 n), ecc(source))`: the informed set at most doubles each
/// round and a vertex at distance `d` cannot be informed before round `d`.
pub fn broadcast_lower_bound(g: &Graph, source: Vertex) -> Result<Round, GraphError> {
    if !g.contains(source) {
        return Err(GraphError::VertexOutOfRange {
            vertex: source,
            n: g.n(),
        });
    }
    let ecc = g.eccentricity(source)?;
    Ok(ceil_log2(g.n()).max(ecc))
}

pub(crate) fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// True iff every edge spans at most `k` positions in `ordering`.
pub fn verify_bandwidth_ordering(
    g: &Graph,
    ordering: &[Vertex],
    k: usize,
) -> Result<bool, GraphError> {
    let position = ordering_positions(g, ordering)?;
    Ok(g.edges()
        .iter()
        .all(|&(u, v)| position[u].abs_diff(position[v]) <= k))
}

/// Inverse of an ordering; errors when `ordering` is not a permutation.
pub fn ordering_positions(g: &Graph, ordering: &[Vertex]) -> Result<Vec<usize>, GraphError> {
    if ordering.len() != g.n() {
        return Err(GraphError::NotPermutation);
    }
    let mut position = vec![usize::MAX; g.n()];
    for (i, &v) in ordering.iter().enumerate() {
        if v >= g.n() || position[v] != usize::MAX {
            return Err(GraphError::NotPermutation);
        }
        position[v] = i;
    }
    Ok(position)
}

/// Largest position span of any edge under `ordering`.
pub fn ordering_bandwidth(g: &Graph, ordering: &[Vertex]) -> Result<usize, GraphError> {
    let position = ordering_positions(g, ordering)?;
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| position[u].abs_diff(position[v]))
        .max()
        .unwrap_or(0))
}

/// Cuthill–McKee style search: BFS orderings from every start vertex with
/// neighbours visited by increasing degree, forward and reversed. Returns the
/// ordering with the smallest achieved bandwidth.
pub fn heuristic_bandwidth_ordering(g: &Graph) -> (Vec<Vertex>, usize) {
    let mut best: Option<(Vec<Vertex>, usize)> = None;
    for start in 0..g.n() {
        let mut order = Vec::with_capacity(g.n());
        let mut seen = vec![false; g.n()];
        // components are appended one after another
        for root in std::iter::once(start).chain(0..g.n()) {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                let mut next: Vec<Vertex> = g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&w| !seen[w])
                    .collect();
                next.sort_by_key(|&w| (g.degree(w), w));
                for w in next {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let reversed: Vec<Vertex> = order.iter().rev().copied().collect();
        for candidate in [order, reversed] {
            let width = ordering_bandwidth(g, &candidate).expect("BFS order is a permutation");
            if best.as_ref().is_none_or(|(_, w)| width < *w) {
                best = Some((candidate, width));
            }
        }
    }
    best.unwrap_or((Vec::new(), 0))
}

/// A k-cycle graph given by the number of non-center vertices of each cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCycleSpec {
    lengths: Vec<u32>,
}

impl KCycleSpec {
    pub fn new(lengths: Vec<u32>) -> Result<Self, GraphError> {
        if lengths.is_empty() {
            return Err(GraphError::EmptyFamily);
        }
        if let Some((index, &len)) = lengths.iter().enumerate().find(|(_, &c)| c < 2) {
            return Err(GraphError::CycleTooShort { index, len });
        }
        Ok(Self { lengths })
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.lengths.iter().map(|&c| c as usize).sum::<usize>()
    }
}

/// A realised k-cycle graph. Vertex 0 is the center; the vertices of cycle
/// `i` follow in input order, listed along the cycle so that `arcs[i][0]` and
/// `arcs[i].last()` are the two neighbours of the center.
#[derive(Debug, Clone)]
pub struct KCycleGraph {
    pub graph: Graph,
    pub center: Vertex,
    pub arcs: Vec<Vec<Vertex>>,
}

pub fn build_k_cycle(spec: &KCycleSpec) -> KCycleGraph {
    let center = 0;
    let mut next = 1;
    let mut edges = Vec::new();
    let mut arcs = Vec::with_capacity(spec.lengths.len());
    for &c in &spec.lengths {
        let arc: Vec<Vertex> = (next..next + c as usize).collect();
        next += c as usize;
        edges.push((center, arc[0]));
        edges.extend(arc.windows(2).map(|w| (w[0], w[1])));
        edges.push((*arc.last().expect("cycles have >= 2 vertices"), center));
        arcs.push(arc);
    }
    let graph = Graph::new(next, edges).expect("k-cycle construction is simple");
    KCycleGraph {
        graph,
        center,
        arcs,
    }
}

/// A k-path graph: `lengths[i]` internal vertices on path `i`, plus an
/// optional direct s–t edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPathSpec {
    lengths: Vec<u32>,
    st_edge: bool,
}

impl KPathSpec {
    pub fn new(lengths: Vec<u32>, st_edge: bool) -> Result<Self, GraphError> {
        if lengths.is_empty() {
            return Err(GraphError::EmptyFamily);
        }
        let zeros = lengths.iter().filter(|&&l| l == 0).count() + usize::from(st_edge);
        if zeros > 1 {
            return Err(GraphError::DuplicateStEdge);
        }
        Ok(Self { lengths, st_edge })
    }

    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn st_edge(&self) -> bool {
        self.st_edge
    }

    /// Whether s and t are adjacent (explicit edge or a zero-length path).
    pub fn has_direct_edge(&self) -> bool {
        self.st_edge || self.lengths.contains(&0)
    }

    pub fn vertex_count(&self) -> usize {
        2 + self.lengths.iter().map(|&l| l as usize).sum::<usize>()
    }

    /// Hop distance between s and t.
    pub fn st_distance(&self) -> u32 {
        if self.has_direct_edge() {
            1
        } else {
            self.lengths.iter().min().copied().unwrap_or(0) + 1
        }
    }
}

/// A realised k-path graph. `s = 0`, `t = 1`, then the internal vertices of
/// each path in input order, listed from the s side to the t side.
#[derive(Debug, Clone)]
pub struct KPathGraph {
    pub graph: Graph,
    pub s: Vertex,
    pub t: Vertex,
    pub paths: Vec<Vec<Vertex>>,
}

pub fn build_k_path(spec: &KPathSpec) -> KPathGraph {
    let (s, t) = (0, 1);
    let mut next = 2;
    let mut edges = Vec::new();
    if spec.st_edge {
        edges.push((s, t));
    }
    let mut paths = Vec::with_capacity(spec.lengths.len());
    for &l in &spec.lengths {
        let path: Vec<Vertex> = (next..next + l as usize).collect();
        next += l as usize;
        match (path.first(), path.last()) {
            (Some(&first), Some(&last)) => {
                edges.push((s, first));
                edges.extend(path.windows(2).map(|w| (w[0], w[1])));
                edges.push((last, t));
            }
            _ => edges.push((s, t)),
        }
        paths.push(path);
    }
    let graph = Graph::new(next, edges).expect("validated k-path spec is simple");
    KPathGraph { graph, s, t, paths }
}

/// Walks a degree-2 chain starting at `first` (a neighbour of `from`) until a
/// vertex in `ends` is reached. Returns the chain and the end vertex.
fn walk_chain(
    g: &Graph,
    from: Vertex,
    first: Vertex,
    ends: &[Vertex],
) -> Option<(Vec<Vertex>, Vertex)> {
    let mut chain = Vec::new();
    let (mut prev, mut cur) = (from, first);
    while !ends.contains(&cur) {
        if g.degree(cur) != 2 || chain.len() > g.n() {
            return None;
        }
        chain.push(cur);
        let nb = g.neighbors(cur);
        let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = nxt;
    }
    Some((chain, cur))
}

/// Recovers the cycle lengths of a k-cycle graph around `center`.
pub fn decompose_k_cycle(g: &Graph, center: Vertex) -> Result<KCycleSpec, GraphError> {
    let bad = GraphError::NotFamily("k-cycle");
    let mut seen = vec![false; g.n()];
    seen[center] = true;
    let mut lengths = Vec::new();
    for &first in g.neighbors(center) {
        if seen[first] {
            continue;
        }
        let (chain, _) = walk_chain(g, center, first, &[center]).ok_or(bad.clone())?;
        for &v in &chain {
            if seen[v] {
                return Err(bad);
            }
            seen[v] = true;
        }
        lengths.push(chain.len() as u32);
    }
    if !all_seen(&seen) {
        return Err(bad);
    }
    KCycleSpec::new(lengths)
}

fn all_seen(seen: &[bool]) -> bool {
    seen.iter().all(|&b| b)
}

/// Recovers the path lengths of a k-path graph with endpoints `s`, `t`.
pub fn decompose_k_path(g: &Graph, s: Vertex, t: Vertex) -> Result<KPathSpec, GraphError> {
    let bad = GraphError::NotFamily("k-path");
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    seen[t] = true;
    let mut lengths = Vec::new();
    let mut st_edge = false;
    for &first in g.neighbors(s) {
        if first == t {
            st_edge = true;
            continue;
        }
        let (chain, end) = walk_chain(g, s, first, &[s, t]).ok_or(bad.clone())?;
        if end != t {
            return Err(bad);
        }
        for &v in &chain {
            seen[v] = true;
        }
        lengths.push(chain.len() as u32);
    }
    if !all_seen(&seen) || g.degree(t) != lengths.len() + usize::from(st_edge) {
        return Err(bad);
    }
    KPathSpec::new(lengths, st_edge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn k_cycle_worked_instance() {
        let kc = build_k_cycle(&KCycleSpec::new(vec![7, 7, 9, 13]).unwrap());
        assert_eq!(kc.graph.n(), 37);
        assert_eq!(kc.graph.degree(kc.center), 8);
    }

    #[test]
    fn small_k_cycles() {
        let tri = build_k_cycle(&KCycleSpec::new(vec![2]).unwrap());
        assert_eq!(tri.graph, Graph::cycle(3));
        let bowtie = build_k_cycle(&KCycleSpec::new(vec![2, 2]).unwrap());
        assert_eq!(bowtie.graph.n(), 5);
        assert_eq!(bowtie.graph.degree(0), 4);
        assert!(matches!(
            KCycleSpec::new(vec![3, 1]),
            Err(GraphError::CycleTooShort { index: 1, len: 1 })
        ));
    }

    #[test]
    fn k_path_worked_instance() {
        let kp = build_k_path(&KPathSpec::new(vec![7, 5, 4, 4], true).unwrap());
        assert_eq!(kp.graph.n(), 22);
        assert_eq!(kp.graph.degree(kp.s), 5);
        assert_eq!(kp.graph.degree(kp.t), 5);
    }

    #[test]
    fn small_k_paths() {
        let p = build_k_path(&KPathSpec::new(vec![3], false).unwrap());
        assert_eq!(p.graph.n(), 5);
        assert!(p.graph.is_tree());
        assert_eq!(p.graph.eccentricity(p.s).unwrap(), 4);

        let tri = build_k_path(&KPathSpec::new(vec![0, 1], false).unwrap());
        assert_eq!(tri.graph.n(), 3);
        assert_eq!(tri.graph.edge_count(), 3);

        assert_eq!(
            KPathSpec::new(vec![0, 0], false),
            Err(GraphError::DuplicateStEdge)
        );
        assert_eq!(
            KPathSpec::new(vec![0, 2], true),
            Err(GraphError::DuplicateStEdge)
        );
    }

    #[test]
    fn decomposition_round_trip() {
        let spec = KCycleSpec::new(vec![4, 2, 9]).unwrap();
        let kc = build_k_cycle(&spec);
        let mut back = decompose_k_cycle(&kc.graph, kc.center)
            .unwrap()
            .lengths()
            .to_vec();
        back.sort_unstable();
        assert_eq!(back, vec![2, 4, 9]);

        let spec = KPathSpec::new(vec![3, 0, 5], false).unwrap();
        let kp = build_k_path(&spec);
        let back = decompose_k_path(&kp.graph, kp.s, kp.t).unwrap();
        let mut lengths = back.lengths().to_vec();
        if back.st_edge() {
            lengths.push(0);
        }
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 3, 5]);
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(broadcast_lower_bound(&Graph::path(5), 0).unwrap(), 4);
        assert_eq!(broadcast_lower_bound(&Graph::star(8), 0).unwrap(), 4);
        assert_eq!(broadcast_lower_bound(&Graph::complete(8), 3).unwrap(), 3);
        let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            broadcast_lower_bound(&split, 0),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn bandwidth_orderings() {
        assert!(verify_bandwidth_ordering(&Graph::path(6), &[0, 1, 2, 3, 4, 5], 1).unwrap());
        // each of the 6 cycle edges spans at most 2 positions
        let c6 = Graph::cycle(6);
        assert!(verify_bandwidth_ordering(&c6, &[0, 5, 1, 4, 2, 3], 2).unwrap());
        assert!(!verify_bandwidth_ordering(&c6, &[0, 5, 1, 4, 2, 3], 1).unwrap());
        let star = Graph::star(4);
        assert!(!verify_bandwidth_ordering(&star, &[1, 2, 0, 3, 4], 1).unwrap());
        assert_eq!(
            verify_bandwidth_ordering(&star, &[0, 0, 1, 2, 3], 1),
            Err(GraphError::NotPermutation)
        );
    }

    #[test]
    fn heuristic_ordering_finds_small_width() {
        let (order, k) = heuristic_bandwidth_ordering(&Graph::cycle(8));
        assert_eq!(k, 2);
        assert!(verify_bandwidth_ordering(&Graph::cycle(8), &order, 2).unwrap());
        assert_eq!(heuristic_bandwidth_ordering(&Graph::path(5)).1, 1);
    }
}
