use std::cmp::Reverse;

use super::OracleError;
use crate::graph::{Graph, Round, Vertex};
use crate::schedule::BroadcastSchedule;

/// Optimal broadcast time on a tree. Each vertex calls its children in
/// order of decreasing subtree time; its own time is the maximum over
/// positions `i` (1-based) of `i + time(child_i)`.
pub fn tree_broadcast_time(
    tree: &Graph,
    source: Vertex,
) -> Result<(Round, BroadcastSchedule), OracleError> {
    if !tree.contains(source) {
        return Err(OracleError::SourceOutOfRange(source));
    }
    if !tree.is_tree() {
        return Err(OracleError::NotATree);
    }
    let n = tree.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![source];
    parent[source] = source;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &u in tree.neighbors(v) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                stack.push(u);
            }
        }
    }

    let mut time = vec![0 as Round; n];
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut kids: Vec<Vertex> = tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| parent[u] == v && u != v)
            .collect();
        kids.sort_by_key(|&u| (Reverse(time[u]), u));
        time[v] = kids
            .iter()
            .enumerate()
            .map(|(i, &u)| i as Round + 1 + time[u])
            .max()
            .unwrap_or(0);
        children[v] = kids;
    }

    let mut sched = BroadcastSchedule::single_source(source);
    let mut informed = vec![0 as Round; n];
    for &v in &order {
        for (i, &u) in children[v].iter().enumerate() {
            let round = informed[v] + i as Round + 1;
            informed[u] = round;
            sched.push(round, v, u);
        }
    }
    sched.normalize();
    Ok((time[source], sched))
}
