//! Double prefix covering: each element `l_i` receives `c(i)` from `{0} ∪ [m]`
//! and `d(i)` from `{0} ∪ [m - beta]` with `c(i) + d(i) >= l_i`; positive
//! values are used at most once on each side.

use std::collections::HashSet;

use crate::graph::{build_k_path, KPathGraph, KPathSpec, Round, Vertex};
use crate::prefixcover::{
    bisect, check_ground, claim, descending_indices, range_chunk, round_multiset, round_range,
    CoverError, Factor, PtasParams, RankPool, RoundedMultiset,
};
use crate::schedule::{push_chain, BroadcastSchedule, Source};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoverWitness {
    pub m: u32,
    pub beta: u32,
    pub c: Vec<u32>,
    pub d: Vec<u32>,
}

impl DoubleCoverWitness {
    pub fn d_bound(&self) -> u32 {
        self.m.saturating_sub(self.beta)
    }

    pub fn validate(&self, ground: &[u32]) -> Result<(), CoverError> {
        check_ground(ground)?;
        for got in [self.c.len(), self.d.len()] {
            if got != ground.len() {
                return Err(CoverError::LengthMismatch {
                    expected: ground.len(),
                    got,
                });
            }
        }
        let mut seen_c = vec![false; self.m as usize + 1];
        let mut seen_d = vec![false; self.d_bound() as usize + 1];
        for (index, &need) in ground.iter().enumerate() {
            let (c, d) = (self.c[index], self.d[index]);
            if c > 0 {
                claim(&mut seen_c, c, self.m)?;
            }
            if d > 0 {
                claim(&mut seen_d, d, self.d_bound())?;
            }
            if c + d < need {
                return Err(CoverError::Uncovered {
                    index,
                    need,
                    sum: c + d,
                });
            }
        }
        Ok(())
    }
}

/// A double covering of a rounded ground multiset; `c[j]`, `d[j]` cover
/// `ground[j]` (non-increasing order), zero meaning "unused".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedDoubleCover {
    pub ground: Vec<u32>,
    pub c: Vec<u32>,
    pub d: Vec<u32>,
}

/// Exact decision for covering `rs` with at most one element of `rc` and one
/// of `rd` per ground element. For a ground value `v` the `c` side is zero,
/// the smallest value `>= v`, or any distinct value `< v`; the `d` side is
/// then the smallest value that closes the gap.
pub fn feasible_double_cover_rounded(
    rs: &RoundedMultiset,
    rc: &RoundedMultiset,
    rd: &RoundedMultiset,
) -> Option<RoundedDoubleCover> {
    let ground = rs.expand();
    let (gc, gd) = (rc.groups(), rd.groups());
    let mut search = DoubleSearch {
        ground: &ground,
        vc: gc.iter().map(|g| g.0).collect(),
        vd: gd.iter().map(|g| g.0).collect(),
        failed: HashSet::new(),
        c: vec![0; ground.len()],
        d: vec![0; ground.len()],
    };
    let ok = search.run(
        0,
        gc.iter().map(|g| g.1).collect(),
        gd.iter().map(|g| g.1).collect(),
    );
    let (c, d) = (search.c, search.d);
    ok.then_some(RoundedDoubleCover { ground, c, d })
}

struct DoubleSearch<'a> {
    ground: &'a [u32],
    vc: Vec<u32>,
    vd: Vec<u32>,
    failed: HashSet<(usize, Vec<usize>, Vec<usize>)>,
    c: Vec<u32>,
    d: Vec<u32>,
}

fn smallest_at_least(values: &[u32], counts: &[usize], need: u32) -> Option<usize> {
    (0..values.len())
        .rev()
        .find(|&j| counts[j] > 0 && values[j] >= need)
}

fn top_sum(values: &[u32], counts: &[usize], mut budget: usize) -> u64 {
    let mut sum = 0;
    for (&v, &k) in values.iter().zip(counts) {
        let take = k.min(budget);
        sum += take as u64 * v as u64;
        budget -= take;
    }
    sum
}

impl DoubleSearch<'_> {
    fn run(&mut self, pos: usize, mut cc: Vec<usize>, mut cd: Vec<usize>) -> bool {
        let Some(&need) = self.ground.get(pos) else {
            return true;
        };
        let key = (pos, cc, cd);
        if self.failed.contains(&key) {
            return false;
        }
        (_, cc, cd) = key;
        let left = self.ground.len() - pos;
        let demand: u64 = self.ground[pos..].iter().map(|&x| x as u64).sum();
        let items: usize = cc.iter().chain(&cd).sum();
        if items < left || top_sum(&self.vc, &cc, left) + top_sum(&self.vd, &cd, left) < demand {
            self.failed.insert((pos, cc, cd));
            return false;
        }

        let mut options: Vec<Option<usize>> = vec![None];
        if let Some(j) = smallest_at_least(&self.vc, &cc, need) {
            options.push(Some(j));
        }
        options.extend(
            (0..self.vc.len())
                .filter(|&j| cc[j] > 0 && self.vc[j] < need)
                .map(Some),
        );
        for opt in options {
            let cv = opt.map_or(0, |j| self.vc[j]);
            if let Some(j) = opt {
                cc[j] -= 1;
            }
            let dj = if cv >= need {
                Ok(None)
            } else {
                smallest_at_least(&self.vd, &cd, need - cv)
                    .map(Some)
                    .ok_or(())
            };
            if let Ok(dj) = dj {
                if let Some(k) = dj {
                    cd[k] -= 1;
                }
                self.c[pos] = cv;
                self.d[pos] = dj.map_or(0, |k| self.vd[k]);
                if self.run(pos + 1, cc.clone(), cd.clone()) {
                    return true;
                }
                if let Some(k) = dj {
                    cd[k] += 1;
                }
            }
            if let Some(j) = opt {
                cc[j] += 1;
            }
        }
        self.failed.insert((pos, cc, cd));
        false
    }
}

/// Lifts a covering of `R_p(S)` by `R_p([m])`, `R_p([m - beta])` to one of
/// `S` by `[m']`, `[m' - beta]` with `m' = m + ceil(m/p)`: the `c` value of
/// rank `i` becomes `m' - i` and the `d` value of rank `i` becomes
/// `m' - beta - i`.
pub fn lift_double_cover(
    s: &[u32],
    cover: &RoundedDoubleCover,
    m: u32,
    beta: u32,
    p: usize,
) -> DoubleCoverWitness {
    let top = m + range_chunk(m, p);
    let mut pool_c = RankPool::new(m, p);
    let mut pool_d = RankPool::new(m.saturating_sub(beta), p);
    let mut c = vec![0; s.len()];
    let mut d = vec![0; s.len()];
    for (j, &orig) in descending_indices(s).iter().enumerate() {
        if cover.c[j] > 0 {
            c[orig] = top - pool_c.take(cover.c[j]);
        }
        if cover.d[j] > 0 {
            d[orig] = top - beta - pool_d.take(cover.d[j]);
        }
    }
    DoubleCoverWitness { m: top, beta, c, d }
}

fn unused(values: &[u32], bound: u32) -> Vec<u32> {
    let used: HashSet<u32> = values.iter().copied().filter(|&x| x > 0).collect();
    (1..=bound).filter(|x| !used.contains(x)).collect()
}

fn close_hole(values: &[u32], hole: Option<u32>) -> Vec<u32> {
    values
        .iter()
        .map(|&x| match hole {
            Some(h) if x > h => x - 1,
            _ => x,
        })
        .collect()
}

/// Lowers `m` one step at a time by deleting an unused `c` number and, while
/// the `d` range is non-empty, an unused `d` number, as long as the result
/// still covers `s`.
pub fn shrink_double_cover(s: &[u32], witness: DoubleCoverWitness) -> DoubleCoverWitness {
    let mut best = witness;
    'outer: while best.m > 1 {
        let holes_c = unused(&best.c, best.m);
        let holes_d: Vec<Option<u32>> = if best.d_bound() == 0 {
            vec![None]
        } else {
            unused(&best.d, best.d_bound())
                .into_iter()
                .rev()
                .map(Some)
                .collect()
        };
        for &hc in holes_c.iter().rev() {
            for &hd in &holes_d {
                let candidate = DoubleCoverWitness {
                    m: best.m - 1,
                    beta: best.beta,
                    c: close_hole(&best.c, Some(hc)),
                    d: close_hole(&best.d, hd),
                };
                if candidate.validate(s).is_ok() {
                    best = candidate;
                    continue 'outer;
                }
            }
        }
        break;
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasDoubleCover {
    /// Smallest `m` at which the rounded ranges cover `R_p(S)`.
    pub rounded_m: u32,
    pub witness: DoubleCoverWitness,
    pub p: usize,
    pub factor: Factor,
}

pub fn ptas_double_prefix_cover(
    s: &[u32],
    beta: u32,
    params: PtasParams,
) -> Result<PtasDoubleCover, CoverError> {
    check_ground(s)?;
    let p = params.p;
    let rs = round_multiset(s, p);
    let max = *s.iter().max().expect("non-empty");
    let hi = max + s.len() as u32;
    let lo = max.div_ceil(2) - 1;
    let feasible = |m: u32| {
        feasible_double_cover_rounded(
            &rs,
            &round_range(m, p),
            &round_range(m.saturating_sub(beta), p),
        )
    };
    let m = bisect(lo, hi, |m| feasible(m).is_some());
    let cover = feasible(m).expect("bisection ends on a feasible m");
    let lifted = lift_double_cover(s, &cover, m, beta, p);
    debug_assert!(lifted.validate(s).is_ok());
    Ok(PtasDoubleCover {
        rounded_m: m,
        witness: shrink_double_cover(s, lifted),
        p,
        factor: Factor::double_cover(p),
    })
}

/// Calls from `s` and `t` realising a double covering of `paths` (each
/// listed from the s side), shifted by `offset`: `s` enters path `i` at
/// `offset + m - c(i) + 1`, `t` at `offset + m - d(i) + 1`.
fn push_path_calls(
    sched: &mut BroadcastSchedule,
    (s, t): (Vertex, Vertex),
    paths: &[&[Vertex]],
    witness: &DoubleCoverWitness,
    offset: Round,
) {
    let m = witness.m;
    for (path, (&c, &d)) in paths.iter().zip(witness.c.iter().zip(&witness.d)) {
        let front = (c as usize).min(path.len());
        if front > 0 {
            push_chain(sched, offset + m - c + 1, s, &path[..front]);
        }
        if front < path.len() {
            let back: Vec<Vertex> = path[front..].iter().rev().copied().collect();
            push_chain(sched, offset + m - d + 1, t, &back);
        }
    }
}

fn positive_paths(kp: &KPathGraph) -> Vec<usize> {
    (0..kp.paths.len())
        .filter(|&i| !kp.paths[i].is_empty())
        .collect()
}

/// Schedule on `build_k_path(spec)` with `s` released at 0 and `t` at
/// `t_release`, realising a double covering of the positive path lengths
/// (in spec order) with `beta = t_release`; completes by round `witness.m`.
pub fn double_cover_to_schedule(
    spec: &KPathSpec,
    witness: &DoubleCoverWitness,
    t_release: Round,
) -> Result<BroadcastSchedule, CoverError> {
    if witness.beta != t_release {
        return Err(CoverError::BetaMismatch {
            beta: witness.beta,
            release: t_release,
        });
    }
    let kp = build_k_path(spec);
    let idx = positive_paths(&kp);
    let lengths: Vec<u32> = idx.iter().map(|&i| spec.lengths()[i]).collect();
    witness.validate(&lengths)?;
    let mut sched = BroadcastSchedule::with_sources(vec![
        Source {
            vertex: kp.s,
            release: 0,
        },
        Source {
            vertex: kp.t,
            release: t_release,
        },
    ]);
    let paths: Vec<&[Vertex]> = idx.iter().map(|&i| kp.paths[i].as_slice()).collect();
    push_path_calls(&mut sched, (kp.s, kp.t), &paths, witness, 0);
    sched.normalize();
    Ok(sched)
}

/// Double-source approximation on `build_k_path(spec)` with `s` at 0 and
/// `t` at `t_release`.
pub fn kpath_double_source_ptas(
    spec: &KPathSpec,
    t_release: Round,
    params: PtasParams,
) -> Result<BroadcastSchedule, CoverError> {
    let lengths: Vec<u32> = spec.lengths().iter().copied().filter(|&l| l > 0).collect();
    if lengths.is_empty() {
        let kp = build_k_path(spec);
        return Ok(BroadcastSchedule::with_sources(vec![
            Source {
                vertex: kp.s,
                release: 0,
            },
            Source {
                vertex: kp.t,
                release: t_release,
            },
        ]));
    }
    let cover = ptas_double_prefix_cover(&lengths, t_release, params)?;
    double_cover_to_schedule(spec, &cover.witness, t_release)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionCase {
    /// The originator is an endpoint; its first call goes towards the other one.
    Endpoint,
    /// The far endpoint is reached along the originator's own path.
    CaseI,
    /// The near endpoint forwards to the far one over another route.
    CaseII,
}

/// The residual two-source problem left after the opening calls from a
/// single originator. Rounds of the residual problem are counted from the
/// end of the prefix: the near endpoint acts as a source released at 0 and
/// the far endpoint as one released at `t_release`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleSourceInstance {
    pub case: ReductionCase,
    /// Whether the near endpoint is the spec's `t` (roles swapped).
    pub swapped: bool,
    /// Rounds spent before the near endpoint makes its first residual call.
    pub prefix: Round,
    pub t_release: Round,
    /// Absolute round at which the far endpoint is informed.
    pub far_informed: Round,
    /// Indices of the positive-length paths left to cover, in spec order.
    pub residual: Vec<usize>,
    /// Path used to reach the far endpoint (`None` for the direct edge).
    pub route: Option<usize>,
    /// Originator's own path and its position on it, counted from the near
    /// endpoint, if it is an internal vertex.
    pub home: Option<(usize, usize)>,
    /// Vertices at the far end of the originator's path that the far
    /// endpoint informs itself, with its first call (Case II only).
    pub far_help: usize,
}

impl DoubleSourceInstance {
    /// The far endpoint's release in the convention where it first calls in
    /// round `alpha`.
    pub fn alpha(&self) -> Round {
        self.t_release + 1
    }
}

/// Direct connections and paths usable as a route between the endpoints,
/// with their number of internal vertices.
fn routes(spec: &KPathSpec, skip: Option<usize>) -> Vec<(Option<usize>, u32)> {
    let edge = spec.st_edge().then_some((None, 0));
    let paths = (0..spec.lengths().len())
        .filter(|&j| Some(j) != skip)
        .map(|j| (Some(j), spec.lengths()[j]));
    edge.into_iter().chain(paths).collect()
}

fn residual_without(spec: &KPathSpec, skip: &[Option<usize>]) -> Vec<usize> {
    (0..spec.lengths().len())
        .filter(|&j| !skip.contains(&Some(j)) && spec.lengths()[j] > 0)
        .collect()
}

/// Every opening considered by the approximation: for an internal
/// originator both orientations, Case I, and Case II over every route and
/// every split of the far side of its path; for an endpoint, every route.
pub fn reduction_candidates(
    spec: &KPathSpec,
    originator: Vertex,
) -> Result<Vec<DoubleSourceInstance>, CoverError> {
    let kp = build_k_path(spec);
    if !kp.graph.contains(originator) {
        return Err(CoverError::OriginatorOutOfRange(originator));
    }
    let mut out = Vec::new();
    if originator == kp.s || originator == kp.t {
        for (route, len) in routes(spec, None) {
            out.push(DoubleSourceInstance {
                case: ReductionCase::Endpoint,
                swapped: originator == kp.t,
                prefix: 1,
                t_release: len,
                far_informed: 1 + len,
                residual: residual_without(spec, &[route]),
                route,
                home: None,
                far_help: 0,
            });
        }
        return Ok(out);
    }
    let (i, q) = kp
        .paths
        .iter()
        .enumerate()
        .find_map(|(i, p)| p.iter().position(|&v| v == originator).map(|q| (i, q)))
        .expect("internal vertices lie on a path");
    let len = kp.paths[i].len();
    for swapped in [false, true] {
        let q = if swapped { len - 1 - q } else { q };
        let (a, b) = ((q + 1) as Round, (len - q) as Round);
        if a <= b + 1 {
            out.push(DoubleSourceInstance {
                case: ReductionCase::CaseI,
                swapped,
                prefix: a,
                t_release: b + 1 - a,
                far_informed: b + 1,
                residual: residual_without(spec, &[Some(i)]),
                route: Some(i),
                home: Some((i, q)),
                far_help: 0,
            });
        }
        for (route, lj) in routes(spec, Some(i)) {
            for far_help in 0..len - q {
                out.push(DoubleSourceInstance {
                    case: ReductionCase::CaseII,
                    swapped,
                    prefix: a + 1,
                    t_release: lj + Round::from(far_help > 0),
                    far_informed: a + 1 + lj,
                    residual: residual_without(spec, &[Some(i), route]),
                    route,
                    home: Some((i, q)),
                    far_help,
                });
            }
        }
    }
    Ok(out)
}

/// The canonical opening: the originator sends towards its
/// nearer endpoint, and the far endpoint is informed either along the
/// originator's path (Case I) or over the shortest other route (Case II),
/// whichever happens first; ties go to Case I. From an endpoint the first
/// call goes over the shortest route.
pub fn reduce_single_source(
    spec: &KPathSpec,
    originator: Vertex,
) -> Result<DoubleSourceInstance, CoverError> {
    let kp = build_k_path(spec);
    let candidates = reduction_candidates(spec, originator)?;
    let natural = |c: &DoubleSourceInstance| match c.home {
        Some((i, q)) => {
            let len = kp.paths[i].len();
            let (a, b) = (q + 1, len - q);
            a < b || (a == b && !c.swapped)
        }
        None => true,
    };
    candidates
        .into_iter()
        .filter(|c| natural(c) && c.far_help == 0)
        .min_by_key(|c| (c.far_informed, c.case != ReductionCase::CaseI, c.t_release))
        .ok_or(CoverError::OriginatorOutOfRange(originator))
}

/// Paths oriented from the near endpoint.
fn oriented(kp: &KPathGraph, swapped: bool) -> (Vertex, Vertex, Vec<Vec<Vertex>>) {
    if swapped {
        let paths = kp
            .paths
            .iter()
            .map(|p| p.iter().rev().copied().collect())
            .collect();
        (kp.t, kp.s, paths)
    } else {
        (kp.s, kp.t, kp.paths.clone())
    }
}

/// Completion of the opening alone (originator's path and route).
fn opening_completion(inst: &DoubleSourceInstance, paths: &[Vec<Vertex>]) -> Round {
    let mut done = inst.far_informed;
    if let Some((i, q)) = inst.home {
        let far_side = paths[i].len() - q - 1;
        let by_originator = far_side - inst.far_help;
        if by_originator > 0 {
            done = done.max(1 + by_originator as Round);
        }
        if inst.far_help > 0 {
            done = done.max(inst.far_informed + inst.far_help as Round);
        }
        done = done.max(q as Round + 1);
    }
    done
}

fn build_schedule(
    inst: &DoubleSourceInstance,
    kp: &KPathGraph,
    originator: Vertex,
    cover: Option<&DoubleCoverWitness>,
) -> BroadcastSchedule {
    let (near, far, paths) = oriented(kp, inst.swapped);
    let mut sched = BroadcastSchedule::single_source(originator);
    if let Some((i, q)) = inst.home {
        let path = &paths[i];
        let mut to_near: Vec<Vertex> = path[..q].iter().rev().copied().collect();
        to_near.push(near);
        push_chain(&mut sched, 1, originator, &to_near);
        let split = path.len() - inst.far_help;
        let mut to_far: Vec<Vertex> = path[q + 1..split].to_vec();
        if inst.case == ReductionCase::CaseI {
            to_far.push(far);
        }
        push_chain(&mut sched, 2, originator, &to_far);
        let helped: Vec<Vertex> = path[split..].iter().rev().copied().collect();
        push_chain(&mut sched, inst.far_informed + 1, far, &helped);
    }
    if inst.case != ReductionCase::CaseI {
        let mut chain = inst.route.map_or_else(Vec::new, |j| paths[j].clone());
        chain.push(far);
        push_chain(&mut sched, inst.prefix, near, &chain);
    }
    if let Some(w) = cover {
        let residual: Vec<&[Vertex]> = inst.residual.iter().map(|&j| paths[j].as_slice()).collect();
        push_path_calls(&mut sched, (near, far), &residual, w, inst.prefix);
    }
    sched.normalize();
    sched
}

/// Approximate broadcast schedule on `build_k_path(spec)` from any vertex.
/// Each candidate opening from [`reduction_candidates`] is completed with
/// the double-cover scheme on its residual paths, and the candidate with the
/// earliest completion is returned (first in candidate order on ties).
pub fn kpath_broadcast_ptas(
    spec: &KPathSpec,
    originator: Vertex,
    params: PtasParams,
) -> Result<BroadcastSchedule, CoverError> {
    let kp = build_k_path(spec);
    let mut solved: std::collections::HashMap<(Vec<usize>, Round), DoubleCoverWitness> =
        std::collections::HashMap::new();
    let mut best: Option<(Round, DoubleSourceInstance)> = None;
    for inst in reduction_candidates(spec, originator)? {
        let (_, _, paths) = oriented(&kp, inst.swapped);
        let mut done = opening_completion(&inst, &paths);
        if !inst.residual.is_empty() {
            let key = (inst.residual.clone(), inst.t_release);
            if !solved.contains_key(&key) {
                let lengths: Vec<u32> = inst.residual.iter().map(|&j| spec.lengths()[j]).collect();
                let cover = ptas_double_prefix_cover(&lengths, inst.t_release, params)?;
                solved.insert(key.clone(), cover.witness);
            }
            done = done.max(inst.prefix + solved[&key].m);
        }
        if best.as_ref().is_none_or(|(b, _)| done < *b) {
            best = Some((done, inst));
        }
    }
    let (_, inst) = best.expect("every vertex has at least one opening");
    let cover = solved.get(&(inst.residual.clone(), inst.t_release));
    Ok(build_schedule(&inst, &kp, originator, cover))
}
