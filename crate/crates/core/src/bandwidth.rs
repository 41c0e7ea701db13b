//! Exact broadcasting on graphs with a bandwidth-`k` vertex ordering.
//!
//! A schedule is a spanning tree with inform times: the source has time 0,
//! every other vertex has a neighbour as parent with a smaller time, and
//! the children of one parent have pairwise distinct times (the rounds in
//! which the parent calls them). The completion is the largest time.
//!
//! Vertices are placed in ordering position. Since every edge spans at most
//! `k` positions, only the last `k` placed vertices can still interact with
//! the rest: their inform time, the parent they wait for among the next `k`
//! positions (if it is not placed yet), and the rounds they already spend
//! calling children. That window is the DP state; the value of a state is
//! the smallest completion among placements reaching it.

use indexmap::IndexMap;
use thiserror::Error;

use crate::graph::{
    ordering_positions, verify_bandwidth_ordering, Graph, GraphError, Round, Vertex,
};
use crate::oracle::tree_broadcast_time;
use crate::schedule::BroadcastSchedule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandwidthError {
    #[error("ordering does not have bandwidth {k}")]
    NotBandwidthK { k: usize },
    #[error("source {0} is not a vertex of the graph")]
    SourceOutOfRange(Vertex),
    #[error("row {row} exceeded the budget of {budget} states")]
    BudgetExceeded { row: usize, budget: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpConfig {
    pub max_states_per_row: usize,
}

impl Default for DpConfig {
    fn default() -> Self {
        Self {
            max_states_per_row: 1_000_000,
        }
    }
}

/// One placed vertex still inside the window.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slot {
    pub time: Round,
    /// Ordering position of a parent that is not placed yet.
    pub pending_parent: Option<usize>,
    /// Rounds in which this vertex already calls a child, ascending.
    pub calls: Vec<Round>,
}

/// The last (up to) `k` placed vertices, oldest first, after `placed`
/// vertices of the ordering have been decided.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WindowState {
    pub placed: usize,
    pub slots: Vec<Slot>,
}

impl WindowState {
    pub fn empty() -> Self {
        Self {
            placed: 0,
            slots: Vec::new(),
        }
    }

    /// `ℓ`: the latest inform time among the window's vertices.
    pub fn latest(&self) -> Round {
        self.slots.iter().map(|s| s.time).max().unwrap_or(0)
    }
}

/// The choice made for the vertex placed in a transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub time: Round,
    /// Ordering position of the parent (before or after the vertex).
    pub parent: Option<usize>,
}

/// Everything a transition needs to know about the instance.
#[derive(Debug, Clone)]
pub struct DpContext<'a> {
    g: &'a Graph,
    ordering: &'a [Vertex],
    positions: Vec<usize>,
    k: usize,
    source: Vertex,
    horizon: Round,
    earliest: Vec<Round>,
}

impl<'a> DpContext<'a> {
    pub fn new(
        g: &'a Graph,
        ordering: &'a [Vertex],
        k: usize,
        source: Vertex,
    ) -> Result<Self, BandwidthError> {
        if !g.contains(source) {
            return Err(BandwidthError::SourceOutOfRange(source));
        }
        if !verify_bandwidth_ordering(g, ordering, k)? {
            return Err(BandwidthError::NotBandwidthK { k });
        }
        g.ensure_connected()?;
        let earliest = g
            .distances_from(source)
            .into_iter()
            .map(|d| d.expect("connected"))
            .collect();
        Ok(Self {
            g,
            ordering,
            positions: ordering_positions(g, ordering)?,
            k,
            source,
            horizon: heuristic_completion(g, source),
            earliest,
        })
    }

    /// Upper bound on inform times used by the DP.
    pub fn horizon(&self) -> Round {
        self.horizon
    }

    fn adjacent_positions(&self, pos: usize) -> impl Iterator<Item = usize> + '_ {
        self.g
            .neighbors(self.ordering[pos])
            .iter()
            .map(|&u| self.positions[u])
    }
}

/// Completion of an optimal schedule on a BFS tree of `g`: a valid schedule
/// for `g`, so an upper bound on its broadcast time.
fn heuristic_completion(g: &Graph, source: Vertex) -> Round {
    let dist = g.distances_from(source);
    let edges = (0..g.n()).filter(|&v| v != source).map(|v| {
        let d = dist[v].expect("connected");
        let parent = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| dist[u] == Some(d - 1))
            .expect("BFS parent exists");
        (parent, v)
    });
    let tree = Graph::new(g.n(), edges.collect::<Vec<_>>()).expect("BFS tree is simple");
    tree_broadcast_time(&tree, source)
        .expect("BFS tree is a tree")
        .0
}

/// All states reachable by placing the next vertex of the ordering.
pub fn successor_states(ctx: &DpContext<'_>, state: &WindowState) -> Vec<(WindowState, Placement)> {
    let pos = state.placed;
    let v = ctx.ordering[pos];
    let mut out = Vec::new();

    let times: Vec<Round> = if v == ctx.source {
        vec![0]
    } else {
        (ctx.earliest[v].max(1)..=ctx.horizon).collect()
    };
    let mut backward = Vec::new();
    let mut forward = Vec::new();
    for p in ctx.adjacent_positions(pos) {
        if p < pos {
            backward.push(p);
        } else {
            forward.push(p);
        }
    }
    let base = pos - state.slots.len();

    for &t in &times {
        // Vertices already placed that wait for `v` as their parent.
        let waiting: Vec<usize> = (0..state.slots.len())
            .filter(|&j| state.slots[j].pending_parent == Some(pos))
            .collect();
        if waiting.iter().any(|&j| state.slots[j].time <= t) {
            continue;
        }
        let mut own_calls: Vec<Round> = waiting.iter().map(|&j| state.slots[j].time).collect();
        own_calls.sort_unstable();

        let mut parents: Vec<Option<usize>> = Vec::new();
        if v == ctx.source {
            parents.push(None);
        } else {
            parents.extend(backward.iter().map(|&p| Some(p)));
            parents.extend(forward.iter().map(|&p| Some(p)));
        }
        for parent in parents {
            let mut slots = state.slots.clone();
            for &j in &waiting {
                slots[j].pending_parent = None;
            }
            let mut pending = None;
            match parent {
                Some(p) if p < pos => {
                    let slot = &mut slots[p - base];
                    if t <= slot.time || slot.calls.contains(&t) {
                        continue;
                    }
                    let at = slot.calls.partition_point(|&r| r < t);
                    slot.calls.insert(at, t);
                }
                Some(p) => {
                    let clash = slots
                        .iter()
                        .any(|s| s.pending_parent == Some(p) && s.time == t);
                    if clash {
                        continue;
                    }
                    pending = Some(p);
                }
                None => {}
            }
            slots.push(Slot {
                time: t,
                pending_parent: pending,
                calls: own_calls.clone(),
            });
            if slots.len() > ctx.k {
                let gone = slots.remove(0);
                debug_assert!(gone.pending_parent.is_none());
            }
            out.push((
                WindowState {
                    placed: pos + 1,
                    slots,
                },
                Placement { time: t, parent },
            ));
        }
    }
    out
}

/// `dp[i+1][s] = max(dp[i][s*], ℓ(s))`.
pub fn dp_value_recurrence(predecessor: Round, state: &WindowState) -> Round {
    predecessor.max(state.latest())
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    value: Round,
    pred: usize,
    placement: Placement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpOutcome {
    pub rounds: Round,
    pub schedule: BroadcastSchedule,
    /// Number of distinct states in each row.
    pub row_sizes: Vec<usize>,
    /// Inform-time cap used by the DP.
    pub horizon: Round,
    /// Whether the source has neighbours both before and after it in the
    /// ordering.
    pub two_sided: bool,
}

fn run(ctx: &DpContext<'_>, config: &DpConfig) -> Result<DpOutcome, BandwidthError> {
    let n = ctx.g.n();
    let mut rows: Vec<Vec<Entry>> = Vec::with_capacity(n);
    let mut row_sizes = Vec::with_capacity(n);
    let mut current: IndexMap<WindowState, Entry> = IndexMap::new();
    current.insert(
        WindowState::empty(),
        Entry {
            value: 0,
            pred: usize::MAX,
            placement: Placement {
                time: 0,
                parent: None,
            },
        },
    );
    for row in 0..n {
        let mut next: IndexMap<WindowState, Entry> = IndexMap::new();
        for (idx, (state, entry)) in current.iter().enumerate() {
            for (succ, placement) in successor_states(ctx, state) {
                let value = dp_value_recurrence(entry.value, &succ);
                let candidate = Entry {
                    value,
                    pred: idx,
                    placement,
                };
                match next.get_mut(&succ) {
                    Some(existing) if existing.value <= value => {}
                    Some(existing) => *existing = candidate,
                    None => {
                        if next.len() >= config.max_states_per_row {
                            return Err(BandwidthError::BudgetExceeded {
                                row,
                                budget: config.max_states_per_row,
                            });
                        }
                        next.insert(succ, candidate);
                    }
                }
            }
        }
        rows.push(current.into_values().collect());
        row_sizes.push(next.len());
        current = next;
    }

    let best = current
        .values()
        .min_by_key(|e| e.value)
        .expect("a heuristic schedule exists within the horizon");
    let mut times = vec![0; n];
    let mut parent_pos = vec![None; n];
    let mut entry = *best;
    for pos in (0..n).rev() {
        times[pos] = entry.placement.time;
        parent_pos[pos] = entry.placement.parent;
        if pos > 0 {
            entry = rows[pos][entry.pred];
        }
    }

    let mut schedule = BroadcastSchedule::single_source(ctx.source);
    for pos in 0..n {
        if let Some(p) = parent_pos[pos] {
            schedule.push(times[pos], ctx.ordering[p], ctx.ordering[pos]);
        }
    }
    schedule.normalize();
    let src = ctx.positions[ctx.source];
    let before = ctx.adjacent_positions(src).any(|p| p < src);
    let after = ctx.adjacent_positions(src).any(|p| p > src);
    Ok(DpOutcome {
        rounds: best.value,
        schedule,
        row_sizes,
        horizon: ctx.horizon,
        two_sided: before && after,
    })
}

/// Optimal broadcast time and schedule from `source`, given an ordering of
/// bandwidth `k`.
pub fn dp_broadcast(
    g: &Graph,
    ordering: &[Vertex],
    k: usize,
    source: Vertex,
) -> Result<(Round, BroadcastSchedule), BandwidthError> {
    let out = dp_broadcast_general_source(g, ordering, k, source, &DpConfig::default())?;
    Ok((out.rounds, out.schedule))
}

/// As [`dp_broadcast`], for a source anywhere in the ordering. The source
/// is fixed at time 0 at its own position, so neighbours on both sides are
/// handled by the same window recurrence; `two_sided` reports that case.
pub fn dp_broadcast_general_source(
    g: &Graph,
    ordering: &[Vertex],
    k: usize,
    source: Vertex,
    config: &DpConfig,
) -> Result<DpOutcome, BandwidthError> {
    let ctx = DpContext::new(g, ordering, k, source)?;
    run(&ctx, config)
}

/// The loose per-row state bound `(2k+1)^k (2k)^k (2k)^{k(2k+1)} n^k`,
/// saturating at `u128::MAX`.
pub fn state_count_bound(k: usize, n: usize) -> u128 {
    let k32 = k as u32;
    let terms = [
        (2 * k as u128 + 1).checked_pow(k32),
        (2 * k as u128).checked_pow(k32),
        (2 * k as u128).checked_pow(k32 * (2 * k32 + 1)),
        (n as u128).checked_pow(k32),
    ];
    terms
        .iter()
        .try_fold(1u128, |acc, t| acc.checked_mul((*t)?))
        .unwrap_or(u128::MAX)
}
