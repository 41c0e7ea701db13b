use std::collections::{HashMap, HashSet};

use super::{OracleConfig, OracleError};
use crate::graph::{Graph, Round, Vertex};
use crate::schedule::{BroadcastSchedule, Call, Source};

/// Minimum broadcast time from a single source released at round 0.
pub fn exact_broadcast_time(
    g: &Graph,
    source: Vertex,
) -> Result<(Round, BroadcastSchedule), OracleError> {
    exact_broadcast_time_with(g, source, &OracleConfig::default())
}

pub fn exact_broadcast_time_with(
    g: &Graph,
    source: Vertex,
    config: &OracleConfig,
) -> Result<(Round, BroadcastSchedule), OracleError> {
    let sources = [Source {
        vertex: source,
        release: 0,
    }];
    solve(g, &sources, config.single_source_cap)
}

/// Minimum completion round when every source holds the message from its
/// release round on.
pub fn exact_broadcast_time_multi(
    g: &Graph,
    sources: &[Source],
) -> Result<(Round, BroadcastSchedule), OracleError> {
    exact_broadcast_time_multi_with(g, sources, &OracleConfig::default())
}

pub fn exact_broadcast_time_multi_with(
    g: &Graph,
    sources: &[Source],
    config: &OracleConfig,
) -> Result<(Round, BroadcastSchedule), OracleError> {
    solve(g, sources, config.multi_source_cap)
}

fn solve(
    g: &Graph,
    sources: &[Source],
    cap: usize,
) -> Result<(Round, BroadcastSchedule), OracleError> {
    let n = g.n();
    let cap = cap.min(64);
    if n > cap {
        return Err(OracleError::InstanceTooLarge { n, cap });
    }
    if sources.is_empty() {
        return Err(OracleError::NoSources);
    }
    let mut is_source = vec![false; n];
    for s in sources {
        if s.vertex >= n {
            return Err(OracleError::SourceOutOfRange(s.vertex));
        }
        if std::mem::replace(&mut is_source[s.vertex], true) {
            return Err(OracleError::DuplicateSource(s.vertex));
        }
    }
    g.ensure_connected()?;

    let mut search = Search::new(g, sources);
    let mut target = search.initial_bound();
    loop {
        let start = search.released_by(0);
        if search.feasible(start, 0, target) {
            let mut sched = BroadcastSchedule::with_sources(sources.to_vec());
            sched.calls = std::mem::take(&mut search.trail);
            sched.normalize();
            return Ok((target, sched));
        }
        target += 1;
    }
}

struct Search<'a> {
    g: &'a Graph,
    full: u64,
    source_mask: u64,
    sources: Vec<Source>,
    max_release: Round,
    dist: Vec<Vec<u32>>,
    failed: HashMap<(u64, Round), Round>,
    trail: Vec<Call>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, sources: &[Source]) -> Self {
        let n = g.n();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let dist = (0..n)
            .map(|v| {
                g.distances_from(v)
                    .into_iter()
                    .map(|d| d.unwrap_or(u32::MAX))
                    .collect()
            })
            .collect();
        Self {
            g,
            full,
            source_mask: sources.iter().fold(0, |m, s| m | bit(s.vertex)),
            sources: sources.to_vec(),
            max_release: sources.iter().map(|s| s.release).max().unwrap_or(0),
            dist,
            failed: HashMap::new(),
            trail: Vec::new(),
        }
    }

    fn released_by(&self, round: Round) -> u64 {
        self.sources
            .iter()
            .filter(|s| s.release <= round)
            .fold(0, |m, s| m | bit(s.vertex))
    }

    fn released_at(&self, round: Round) -> u64 {
        self.sources
            .iter()
            .filter(|s| s.release == round)
            .fold(0, |m, s| m | bit(s.vertex))
    }

    /// Latest release, and for every vertex the earliest round any source
    /// could reach it.
    fn initial_bound(&self) -> Round {
        (0..self.g.n())
            .map(|v| {
                self.sources
                    .iter()
                    .map(|s| s.release + self.dist[s.vertex][v])
                    .min()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
            .max(self.max_release)
    }

    /// Can every vertex be informed by round `target`, given `mask` is
    /// informed at the end of `round`? Leaves the calls used in `trail`.
    fn feasible(&mut self, mask: u64, round: Round, target: Round) -> bool {
        if mask == self.full {
            return true;
        }
        if round >= target {
            return false;
        }
        let remaining = target - round;
        let key = (mask, round.min(self.max_release));
        if self.failed.get(&key).is_some_and(|&r| r >= remaining) {
            return false;
        }
        if self.can_finish(mask, round, target) {
            let arriving = self.released_at(round + 1);
            for (targets, calls) in self.call_sets(mask) {
                let depth = self.trail.len();
                self.trail
                    .extend(calls.iter().map(|&(caller, callee)| Call {
                        round: round + 1,
                        caller,
                        callee,
                    }));
                if self.feasible(mask | targets | arriving, round + 1, target) {
                    return true;
                }
                self.trail.truncate(depth);
            }
        }
        let slot = self.failed.entry(key).or_insert(0);
        *slot = (*slot).max(remaining);
        false
    }

    fn can_finish(&self, mask: u64, round: Round, target: Round) -> bool {
        let n = self.g.n();
        let mut count = mask.count_ones() as usize;
        for r in round + 1..=target {
            count = (2 * count + (self.released_at(r) & !mask).count_ones() as usize).min(n);
        }
        if count < n {
            return false;
        }
        let informed: Vec<Vertex> = (0..n).filter(|&v| mask & bit(v) != 0).collect();
        (0..n)
            .filter(|&v| mask & bit(v) == 0 && self.source_mask & bit(v) == 0)
            .all(|v| {
                let by_calls = informed
                    .iter()
                    .map(|&u| round.saturating_add(self.dist[u][v]))
                    .min()
                    .unwrap_or(Round::MAX);
                let by_release = self
                    .sources
                    .iter()
                    .filter(|s| mask & bit(s.vertex) == 0)
                    .map(|s| s.release.saturating_add(self.dist[s.vertex][v]))
                    .min()
                    .unwrap_or(Round::MAX);
                by_calls.min(by_release) <= target
            })
    }

    /// Maximal caller→callee matchings from the informed set, one per
    /// distinct callee set, dropping callee sets strictly contained in
    /// another. Callers are visited in index order and try their
    /// lowest-index target first.
    fn call_sets(&self, mask: u64) -> Vec<(u64, Vec<(Vertex, Vertex)>)> {
        let blocked = mask | self.source_mask;
        let callers: Vec<(Vertex, Vec<Vertex>)> = (0..self.g.n())
            .filter(|&v| mask & bit(v) != 0)
            .map(|v| {
                let free: Vec<Vertex> = self
                    .g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&u| blocked & bit(u) == 0)
                    .collect();
                (v, free)
            })
            .filter(|(_, free)| !free.is_empty())
            .collect();

        let mut out = Vec::new();
        let mut seen = HashSet::new();
        let mut chosen = Vec::new();
        enumerate(&callers, 0, 0, &mut chosen, &mut seen, &mut out);
        let sets: Vec<u64> = out.iter().map(|(t, _)| *t).collect();
        out.retain(|(t, _)| !sets.iter().any(|&o| o != *t && o & t == *t));
        out
    }
}

fn enumerate(
    callers: &[(Vertex, Vec<Vertex>)],
    i: usize,
    taken: u64,
    chosen: &mut Vec<(Vertex, Vertex)>,
    seen: &mut HashSet<u64>,
    out: &mut Vec<(u64, Vec<(Vertex, Vertex)>)>,
) {
    let Some((caller, free)) = callers.get(i) else {
        let idle_with_options = callers.iter().any(|(c, free)| {
            !chosen.iter().any(|&(x, _)| x == *c) && free.iter().any(|&u| taken & bit(u) == 0)
        });
        if !idle_with_options && seen.insert(taken) {
            out.push((taken, chosen.clone()));
        }
        return;
    };
    for &u in free {
        if taken & bit(u) == 0 {
            chosen.push((*caller, u));
            enumerate(callers, i + 1, taken | bit(u), chosen, seen, out);
            chosen.pop();
        }
    }
    enumerate(callers, i + 1, taken, chosen, seen, out);
}

fn bit(v: Vertex) -> u64 {
    1u64 << v
}
