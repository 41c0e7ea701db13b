//! Timed call lists and the validator that enforces the telephone model.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Round, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Source {
    #[serde(rename = "v")]
    pub vertex: Vertex,
    /// Round at which the vertex holds the message; it may call from
    /// round `release + 1` on.
    pub release: Round,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Call {
    pub round: Round,
    pub caller: Vertex,
    pub callee: Vertex,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BroadcastSchedule {
    pub sources: Vec<Source>,
    pub calls: Vec<Call>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule has no source")]
    NoSources,
    #[error("vertex {vertex} is out of range")]
    VertexOutOfRange { vertex: Vertex },
    #[error("vertex {vertex} listed as a source more than once")]
    DuplicateSource { vertex: Vertex },
    #[error("call at round 0 from {caller}; calls start at round 1")]
    RoundZero { caller: Vertex },
    #[error("vertex {vertex} is never informed")]
    UncoveredVertex { vertex: Vertex },
    #[error("vertex {vertex} is informed more than once")]
    DuplicateCallee { vertex: Vertex },
    #[error("source {vertex} is called in round {round}")]
    CalleeIsSource { round: Round, vertex: Vertex },
    #[error("vertex {caller} makes two calls in round {round}")]
    DoubleCall { round: Round, caller: Vertex },
    #[error("vertex {caller} calls in round {round} before being informed")]
    CallerUninformed { round: Round, caller: Vertex },
    #[error("call {caller}->{callee} in round {round} is not an edge")]
    NonEdgeCall {
        round: Round,
        caller: Vertex,
        callee: Vertex,
    },
}

impl BroadcastSchedule {
    pub fn single_source(vertex: Vertex) -> Self {
        Self {
            sources: vec![Source { vertex, release: 0 }],
            calls: Vec::new(),
        }
    }

    pub fn with_sources(sources: Vec<Source>) -> Self {
        Self {
            sources,
            calls: Vec::new(),
        }
    }

    pub fn push(&mut self, round: Round, caller: Vertex, callee: Vertex) {
        self.calls.push(Call {
            round,
            caller,
            callee,
        });
    }

    /// Sorts calls by round, then caller; the canonical order for files.
    pub fn normalize(&mut self) {
        self.calls.sort_unstable();
    }

    /// Largest inform round (source releases included), without validation.
    pub fn completion(&self) -> Round {
        let calls = self.calls.iter().map(|c| c.round);
        let releases = self.sources.iter().map(|s| s.release);
        calls.chain(releases).max().unwrap_or(0)
    }

    /// Inform round of every vertex, `None` for vertices never informed.
    /// Assumes each vertex is informed at most once.
    pub fn inform_times(&self, n: usize) -> Vec<Option<Round>> {
        let mut times = vec![None; n];
        for s in &self.sources {
            if s.vertex < n {
                times[s.vertex] = Some(s.release);
            }
        }
        for c in &self.calls {
            if c.callee < n {
                times[c.callee] = Some(c.round);
            }
        }
        times
    }

    /// Number of vertices informed by the end of each round `0..=horizon`.
    pub fn informed_counts(&self, n: usize, horizon: Round) -> Vec<usize> {
        let mut counts = vec![0; horizon as usize + 1];
        for t in self.inform_times(n).into_iter().flatten() {
            if let Some(slot) = counts.get_mut(t as usize) {
                *slot += 1;
            }
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        counts
    }
}

/// Checks every protocol rule against `g` and returns the completion round.
pub fn validate_schedule(g: &Graph, sched: &BroadcastSchedule) -> Result<Round, ScheduleError> {
    let n = g.n();
    if sched.sources.is_empty() {
        return Err(ScheduleError::NoSources);
    }
    let mut informed: Vec<Option<Round>> = vec![None; n];
    let mut is_source = vec![false; n];
    for s in &sched.sources {
        if s.vertex >= n {
            return Err(ScheduleError::VertexOutOfRange { vertex: s.vertex });
        }
        if is_source[s.vertex] {
            return Err(ScheduleError::DuplicateSource { vertex: s.vertex });
        }
        is_source[s.vertex] = true;
        informed[s.vertex] = Some(s.release);
    }

    let mut calls = sched.calls.clone();
    calls.sort_unstable();
    for c in &calls {
        for v in [c.caller, c.callee] {
            if v >= n {
                return Err(ScheduleError::VertexOutOfRange { vertex: v });
            }
        }
        if c.round == 0 {
            return Err(ScheduleError::RoundZero { caller: c.caller });
        }
        if is_source[c.callee] {
            return Err(ScheduleError::CalleeIsSource {
                round: c.round,
                vertex: c.callee,
            });
        }
        if informed[c.callee].is_some() {
            return Err(ScheduleError::DuplicateCallee { vertex: c.callee });
        }
        informed[c.callee] = Some(c.round);
    }
    for w in calls.windows(2) {
        if w[0].round == w[1].round && w[0].caller == w[1].caller {
            return Err(ScheduleError::DoubleCall {
                round: w[1].round,
                caller: w[1].caller,
            });
        }
    }
    for c in &calls {
        match informed[c.caller] {
            Some(t) if t < c.round => {}
            _ => {
                return Err(ScheduleError::CallerUninformed {
                    round: c.round,
                    caller: c.caller,
                })
            }
        }
        if !g.has_edge(c.caller, c.callee) {
            return Err(ScheduleError::NonEdgeCall {
                round: c.round,
                caller: c.caller,
                callee: c.callee,
            });
        }
    }
    if let Some(vertex) = informed.iter().position(Option::is_none) {
        return Err(ScheduleError::UncoveredVertex { vertex });
    }
    Ok(informed.into_iter().flatten().max().unwrap_or(0))
}

/// Appends a forwarding chain: `caller` calls `chain[0]` at `start`, and each
/// chain vertex calls the next one in the following round.
pub(crate) fn push_chain(
    sched: &mut BroadcastSchedule,
    start: Round,
    caller: Vertex,
    chain: &[Vertex],
) {
    let mut prev = caller;
    for (j, &v) in chain.iter().enumerate() {
        sched.push(start + j as Round, prev, v);
        prev = v;
    }
}
