//! Prefix covering: cover every element of a multiset `S` by a part of at
//! most two numbers taken from `[m] = {1, ..., m}`, each number used once.

use thiserror::Error;

use crate::graph::{build_k_cycle, KCycleSpec, Round, Vertex};
use crate::schedule::{push_chain, BroadcastSchedule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("ground multiset is empty")]
    EmptyGround,
    #[error("ground element {index} is zero; elements must be positive")]
    ZeroElement { index: usize },
    #[error("witness has {got} entries for {expected} ground elements")]
    LengthMismatch { expected: usize, got: usize },
    #[error("part {index} has {size} numbers; at most 2 are allowed")]
    PartTooLarge { index: usize, size: usize },
    #[error("covering number {value} is outside [1, {bound}]")]
    OutOfRange { value: u32, bound: u32 },
    #[error("covering number {value} is used twice")]
    Reused { value: u32 },
    #[error("element {index} needs {need} but its part sums to {sum}")]
    Uncovered { index: usize, need: u32, sum: u32 },
    #[error("witness has beta {beta} but the late source is released at {release}")]
    BetaMismatch { beta: u32, release: u32 },
    #[error("vertex {0} is not in the graph")]
    OriginatorOutOfRange(Vertex),
}

/// One part per ground element (in input order), each holding one or two
/// distinct numbers from `[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWitness {
    pub m: u32,
    pub parts: Vec<Vec<u32>>,
}

impl CoverWitness {
    /// Numbers of `[m]` left out of every part.
    pub fn unused(&self) -> Vec<u32> {
        let mut seen = vec![false; self.m as usize + 1];
        for &x in self.parts.iter().flatten() {
            if let Some(slot) = seen.get_mut(x as usize) {
                *slot = true;
            }
        }
        (1..=self.m).filter(|&x| !seen[x as usize]).collect()
    }

    pub fn validate(&self, ground: &[u32]) -> Result<(), CoverError> {
        check_ground(ground)?;
        if self.parts.len() != ground.len() {
            return Err(CoverError::LengthMismatch {
                expected: ground.len(),
                got: self.parts.len(),
            });
        }
        let mut seen = vec![false; self.m as usize + 1];
        for (index, (part, &need)) in self.parts.iter().zip(ground).enumerate() {
            if part.len() > 2 {
                return Err(CoverError::PartTooLarge {
                    index,
                    size: part.len(),
                });
            }
            for &x in part {
                claim(&mut seen, x, self.m)?;
            }
            let sum: u32 = part.iter().sum();
            if sum < need {
                return Err(CoverError::Uncovered { index, need, sum });
            }
        }
        Ok(())
    }
}

pub(crate) fn check_ground(ground: &[u32]) -> Result<(), CoverError> {
    if ground.is_empty() {
        return Err(CoverError::EmptyGround);
    }
    match ground.iter().position(|&x| x == 0) {
        Some(index) => Err(CoverError::ZeroElement { index }),
        None => Ok(()),
    }
}

/// Marks `x` as used in a `[bound]` range.
pub(crate) fn claim(seen: &mut [bool], x: u32, bound: u32) -> Result<(), CoverError> {
    if x == 0 || x > bound {
        return Err(CoverError::OutOfRange { value: x, bound });
    }
    if std::mem::replace(&mut seen[x as usize], true) {
        return Err(CoverError::Reused { value: x });
    }
    Ok(())
}

/// `R_p(S)`: the elements of `S` in non-increasing order, cut into parts of
/// `ceil(|S| / p)` consecutive elements (the last part may be shorter), each
/// element replaced by the maximum of its part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedMultiset {
    values: Vec<u32>,
    part_sizes: Vec<usize>,
    origin_size: usize,
}

impl RoundedMultiset {
    /// Treats every value as its own part (no rounding).
    pub fn from_values(mut values: Vec<u32>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        let origin_size = values.len();
        Self {
            values,
            part_sizes: vec![1; origin_size],
            origin_size,
        }
    }

    /// Part values, non-increasing.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn origin_size(&self) -> usize {
        self.origin_size
    }

    /// Number of distinct values.
    pub fn support(&self) -> usize {
        self.groups().len()
    }

    /// All rounded elements, non-increasing.
    pub fn expand(&self) -> Vec<u32> {
        self.values
            .iter()
            .zip(&self.part_sizes)
            .flat_map(|(&v, &k)| std::iter::repeat_n(v, k))
            .collect()
    }

    /// Distinct values with multiplicities, non-increasing.
    pub fn groups(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for (&v, &k) in self.values.iter().zip(&self.part_sizes) {
            match out.last_mut() {
                Some((last, count)) if *last == v => *count += k,
                _ if k > 0 => out.push((v, k)),
                _ => {}
            }
        }
        out
    }
}

pub fn round_multiset(s: &[u32], p: usize) -> RoundedMultiset {
    let mut sorted = s.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let chunk = s.len().div_ceil(p.max(1)).max(1);
    let mut values = Vec::new();
    let mut part_sizes = Vec::new();
    for part in sorted.chunks(chunk) {
        values.push(part[0]);
        part_sizes.push(part.len());
    }
    RoundedMultiset {
        values,
        part_sizes,
        origin_size: s.len(),
    }
}

/// `R_p([m])` without materialising `[m]`: part `j` holds value
/// `m - j * ceil(m / p)`.
pub fn round_range(m: u32, p: usize) -> RoundedMultiset {
    let chunk = range_chunk(m, p);
    let mut values = Vec::new();
    let mut part_sizes = Vec::new();
    let mut top = m;
    while top > 0 {
        values.push(top);
        part_sizes.push(chunk.min(top) as usize);
        top = top.saturating_sub(chunk);
    }
    RoundedMultiset {
        values,
        part_sizes,
        origin_size: m as usize,
    }
}

pub(crate) fn range_chunk(m: u32, p: usize) -> u32 {
    m.div_ceil(p.max(1) as u32).max(1)
}

/// A covering of a rounded ground multiset by rounded covering values.
/// `parts[j]` covers `ground[j]`; both are in non-increasing ground order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedCover {
    pub ground: Vec<u32>,
    pub parts: Vec<Vec<u32>>,
}

/// Exact decision: can the elements of `rc`, grouped into parts of at most
/// two, cover every element of `rs`?
///
/// The search runs over ground elements in non-increasing order with the
/// remaining supply of each distinct covering value as state. For a ground
/// value `v` it tries the smallest single value `>= v`, and for each distinct
/// top value `a < v` the smallest partner `b <= a` with `a + b >= v`; any
/// other choice can be exchanged for one of these.
pub fn feasible_cover_rounded(rs: &RoundedMultiset, rc: &RoundedMultiset) -> Option<RoundedCover> {
    let ground = rs.expand();
    let groups = rc.groups();
    let mut search = RoundedSearch {
        ground: &ground,
        values: groups.iter().map(|g| g.0).collect(),
        failed: std::collections::HashSet::new(),
        parts: vec![Vec::new(); ground.len()],
    };
    let counts: Vec<usize> = groups.iter().map(|g| g.1).collect();
    let ok = search.run(0, counts);
    let parts = search.parts;
    ok.then_some(RoundedCover { ground, parts })
}

struct RoundedSearch<'a> {
    ground: &'a [u32],
    values: Vec<u32>,
    failed: std::collections::HashSet<(usize, Vec<usize>)>,
    parts: Vec<Vec<u32>>,
}

impl RoundedSearch<'_> {
    /// Index of the smallest available value `>= need` among indices `>= from`.
    fn smallest_at_least(&self, counts: &[usize], need: u32, from: usize) -> Option<usize> {
        (from..self.values.len())
            .rev()
            .find(|&j| counts[j] > 0 && self.values[j] >= need)
    }

    fn run(&mut self, pos: usize, mut counts: Vec<usize>) -> bool {
        let Some(&need) = self.ground.get(pos) else {
            return true;
        };
        if self.failed.contains(&(pos, counts.clone())) {
            return false;
        }
        let left = self.ground.len() - pos;
        let items: usize = counts.iter().sum();
        let demand: u64 = self.ground[pos..].iter().map(|&x| x as u64).sum();
        let mut budget = 2 * left;
        let mut top = 0u64;
        for (j, &c) in counts.iter().enumerate() {
            let take = c.min(budget);
            top += take as u64 * self.values[j] as u64;
            budget -= take;
        }
        if items < left || top < demand {
            self.failed.insert((pos, counts));
            return false;
        }

        if let Some(j) = self.smallest_at_least(&counts, need, 0) {
            counts[j] -= 1;
            self.parts[pos] = vec![self.values[j]];
            if self.run(pos + 1, counts.clone()) {
                return true;
            }
            counts[j] += 1;
        }
        for a in 0..self.values.len() {
            let va = self.values[a];
            if va >= need || counts[a] == 0 {
                continue;
            }
            counts[a] -= 1;
            if let Some(b) = self.smallest_at_least(&counts, need - va, a) {
                counts[b] -= 1;
                self.parts[pos] = vec![va, self.values[b]];
                if self.run(pos + 1, counts.clone()) {
                    return true;
                }
                counts[b] += 1;
            }
            counts[a] += 1;
        }
        self.failed.insert((pos, counts));
        false
    }
}

/// Hands out the ranks of `R_p([m])` (0-based, non-increasing order) for each
/// rounded value, so equal rounded values receive distinct ranks.
pub(crate) struct RankPool {
    m: u32,
    chunk: u32,
    next: std::collections::HashMap<u32, u32>,
}

impl RankPool {
    pub(crate) fn new(m: u32, p: usize) -> Self {
        Self {
            m,
            chunk: range_chunk(m, p),
            next: std::collections::HashMap::new(),
        }
    }

    pub(crate) fn take(&mut self, value: u32) -> u32 {
        let part = (self.m - value) / self.chunk;
        let slot = self.next.entry(value).or_insert(part * self.chunk);
        let rank = *slot;
        *slot += 1;
        rank
    }
}

/// Indices of `s` sorted by value, largest first (stable).
pub(crate) fn descending_indices(s: &[u32]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..s.len()).collect();
    idx.sort_by(|&a, &b| s[b].cmp(&s[a]).then(a.cmp(&b)));
    idx
}

/// Turns a covering of `R_p(S)` by `R_p([m])` into a covering of `S` by
/// `[m + ceil(m/p)]`: the covering value of rank `i` becomes
/// `m + ceil(m/p) - i`, and the `j`-th largest rounded ground element hands
/// its part to the `j`-th largest element of `S`.
pub fn lift_cover(s: &[u32], cover: &RoundedCover, m: u32, p: usize) -> CoverWitness {
    let mut pool = RankPool::new(m, p);
    let top = m + pool.chunk;
    let mut parts = vec![Vec::new(); s.len()];
    for (&orig, part) in descending_indices(s).iter().zip(&cover.parts) {
        parts[orig] = part.iter().map(|&v| top - pool.take(v)).collect();
    }
    CoverWitness { m: top, parts }
}

/// Repeatedly deletes an unused number (largest first) and renumbers the
/// numbers above it, while the witness still covers `s`.
pub fn shrink_cover(s: &[u32], witness: CoverWitness) -> CoverWitness {
    let mut best = witness;
    'outer: loop {
        for hole in best.unused().into_iter().rev() {
            let candidate = CoverWitness {
                m: best.m - 1,
                parts: best
                    .parts
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|&x| if x > hole { x - 1 } else { x })
                            .collect()
                    })
                    .collect(),
            };
            if candidate.validate(s).is_ok() {
                best = candidate;
                continue 'outer;
            }
        }
        return best;
    }
}

/// The rounding parameter `p` and the approximation factor it certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PtasParams {
    pub p: usize,
}

impl PtasParams {
    pub fn new(p: usize) -> Self {
        Self { p: p.max(1) }
    }

    /// `p = ceil(3 / eps^2)`.
    pub fn from_epsilon(eps: f64) -> Self {
        assert!(eps > 0.0 && eps.is_finite(), "epsilon must be positive");
        Self::new((3.0 / (eps * eps)).ceil() as usize)
    }
}

/// An approximation factor `num / den`, kept as integers so that
/// `value <= factor * opt` is checked exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub num: u64,
    pub den: u64,
}

impl Factor {
    /// `(1 + 2/p)(1 + 1/p)`.
    pub fn single_cover(p: usize) -> Self {
        let p = p as u64;
        Self {
            num: (p + 2) * (p + 1),
            den: p * p,
        }
    }

    /// `(1 + 1/p)^2`.
    pub fn double_cover(p: usize) -> Self {
        let p = p as u64;
        Self {
            num: (p + 1) * (p + 1),
            den: p * p,
        }
    }

    pub fn admits(&self, value: u64, opt: u64) -> bool {
        value * self.den <= self.num * opt
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasCover {
    /// Smallest `m` at which `R_p([m])` covers `R_p(S)`.
    pub rounded_m: u32,
    pub witness: CoverWitness,
    pub p: usize,
    pub factor: Factor,
}

/// Smallest `m` in `(lo, hi]` with `pred(m)`, given `pred(hi)` holds and
/// `pred` holds on every value from some threshold up.
pub(crate) fn bisect(mut lo: u32, mut hi: u32, mut pred: impl FnMut(u32) -> bool) -> u32 {
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub fn ptas_prefix_cover(s: &[u32], params: PtasParams) -> Result<PtasCover, CoverError> {
    check_ground(s)?;
    let p = params.p;
    let rs = round_multiset(s, p);
    let max = *s.iter().max().expect("non-empty");
    let hi = max + s.len() as u32;
    let lo = (max.div_ceil(2) as usize).max(s.len()) as u32 - 1;
    let feasible = |m: u32| feasible_cover_rounded(&rs, &round_range(m, p));
    let m = bisect(lo, hi, |m| feasible(m).is_some());
    let cover = feasible(m).expect("bisection ends on a feasible m");
    let lifted = lift_cover(s, &cover, m, p);
    debug_assert!(lifted.validate(s).is_ok());
    Ok(PtasCover {
        rounded_m: m,
        witness: shrink_cover(s, lifted),
        p,
        factor: Factor::single_cover(p),
    })
}

/// Center calls for a covering of the cycles in `arcs`, all offset by
/// `release`: a part `{x}` starts one arc end at `release + m - x + 1`; a
/// part `{x, y}` with `x > y` also starts the other end at
/// `release + m - y + 1`. Informed vertices forward along their arc.
pub(crate) fn push_cycle_calls(
    sched: &mut BroadcastSchedule,
    center: Vertex,
    arcs: &[&[Vertex]],
    witness: &CoverWitness,
    release: Round,
) {
    for (arc, part) in arcs.iter().zip(&witness.parts) {
        let mut part = part.clone();
        part.sort_unstable_by(|a, b| b.cmp(a));
        let x = part[0];
        let front = (x as usize).min(arc.len());
        push_chain(sched, release + witness.m - x + 1, center, &arc[..front]);
        if front < arc.len() {
            let back: Vec<Vertex> = arc[front..].iter().rev().copied().collect();
            push_chain(sched, release + witness.m - part[1] + 1, center, &back);
        }
    }
}

/// Schedule from the center of `build_k_cycle(spec)` realising a covering of
/// the cycle lengths; it completes by round `witness.m`.
pub fn kcycle_cover_to_schedule(
    spec: &KCycleSpec,
    witness: &CoverWitness,
) -> Result<BroadcastSchedule, CoverError> {
    witness.validate(spec.lengths())?;
    let kc = build_k_cycle(spec);
    let arcs: Vec<&[Vertex]> = kc.arcs.iter().map(Vec::as_slice).collect();
    let mut sched = BroadcastSchedule::single_source(kc.center);
    push_cycle_calls(&mut sched, kc.center, &arcs, witness, 0);
    sched.normalize();
    Ok(sched)
}

/// Approximate broadcast schedule on `build_k_cycle(spec)` from any vertex.
///
/// From a non-center vertex `v` the message first travels along the shorter
/// side of `v`'s cycle to the center (arriving at round `d`) while `v` starts
/// the other side in round 2. The center either helps on that side from
/// round `d + 1` or goes straight to the other cycles; every split is tried
/// and the other cycles are covered by the approximation scheme, shifted by
/// the center's release.
pub fn kcycle_broadcast_ptas(
    spec: &KCycleSpec,
    originator: Vertex,
    params: PtasParams,
) -> Result<BroadcastSchedule, CoverError> {
    let kc = build_k_cycle(spec);
    if !kc.graph.contains(originator) {
        return Err(CoverError::OriginatorOutOfRange(originator));
    }
    if originator == kc.center {
        let cover = ptas_prefix_cover(spec.lengths(), params)?;
        return kcycle_cover_to_schedule(spec, &cover.witness);
    }
    let (home, q) = kc
        .arcs
        .iter()
        .enumerate()
        .find_map(|(i, arc)| arc.iter().position(|&v| v == originator).map(|q| (i, q)))
        .expect("non-center vertices lie on an arc");
    let arc = &kc.arcs[home];
    let (near, far): (Vec<Vertex>, Vec<Vertex>) = if q < arc.len() - q {
        (
            arc[..q].iter().rev().copied().collect(),
            arc[q + 1..].to_vec(),
        )
    } else {
        (
            arc[q + 1..].to_vec(),
            arc[..q].iter().rev().copied().collect(),
        )
    };
    let d = near.len() as Round + 1;
    let f = far.len();

    let rest: Vec<usize> = (0..kc.arcs.len()).filter(|&i| i != home).collect();
    let rest_lengths: Vec<u32> = rest.iter().map(|&i| spec.lengths()[i]).collect();
    let rest_cover = if rest.is_empty() {
        None
    } else {
        Some(ptas_prefix_cover(&rest_lengths, params)?.witness)
    };

    // x = number of far-side vertices informed from v's side.
    let evaluate = |x: usize| {
        let helped = f - x;
        let release = if helped > 0 { d + 1 } else { d };
        let own = [d, 1 + x as Round, d + helped as Round].into_iter();
        let own = own
            .zip([true, x > 0, helped > 0])
            .filter_map(|(r, used)| used.then_some(r))
            .max()
            .unwrap_or(d);
        let others = rest_cover.as_ref().map_or(0, |w| release + w.m);
        (own.max(others), release)
    };
    let x = (0..=f)
        .rev()
        .min_by_key(|&x| evaluate(x).0)
        .expect("range is non-empty");
    let (_, release) = evaluate(x);

    let mut sched = BroadcastSchedule::single_source(originator);
    let mut to_center = near.clone();
    to_center.push(kc.center);
    push_chain(&mut sched, 1, originator, &to_center);
    push_chain(&mut sched, 2, originator, &far[..x]);
    let helped: Vec<Vertex> = far[x..].iter().rev().copied().collect();
    push_chain(&mut sched, d + 1, kc.center, &helped);
    if let Some(w) = &rest_cover {
        let arcs: Vec<&[Vertex]> = rest.iter().map(|&i| kc.arcs[i].as_slice()).collect();
        push_cycle_calls(&mut sched, kc.center, &arcs, w, release);
    }
    sched.normalize();
    Ok(sched)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_broadcast_time, exact_prefix_cover};
    use crate::schedule::validate_schedule;

    #[test]
    fn rounding_example() {
        let s = [123, 67, 65, 45, 43, 43, 43, 18, 12, 12, 10, 6, 4, 4, 1, 1];
        let r = round_multiset(&s, 4);
        assert_eq!(r.values(), &[123, 43, 12, 4]);
        assert_eq!(r.part_sizes(), &[4, 4, 4, 4]);
        assert_eq!(r.origin_size(), 16);
        assert_eq!(round_multiset(&s, 1).expand(), vec![123; 16]);
        assert_eq!(round_multiset(&[5, 3], 2).expand(), vec![5, 3]);
        assert_eq!(round_multiset(&[3, 5], 7).expand(), vec![5, 3]);
    }

    #[test]
    fn rounded_range_parts() {
        assert_eq!(
            round_range(12, 3).expand(),
            [[12; 4], [8; 4], [4; 4]].concat()
        );
        assert_eq!(round_range(5, 2).expand(), vec![5, 5, 5, 2, 2]);
        assert_eq!(round_range(4, 9).expand(), vec![4, 3, 2, 1]);
        for m in 1..40 {
            for p in 1..6 {
                assert_eq!(
                    round_range(m, p),
                    round_multiset(&(1..=m).collect::<Vec<_>>(), p)
                );
            }
        }
    }

    #[test]
    fn rounded_feasibility_examples() {
        let rs = round_multiset(
            &[123, 67, 65, 45, 43, 43, 43, 18, 12, 12, 10, 6, 4, 4, 1, 1],
            4,
        );
        assert!(feasible_cover_rounded(&rs, &round_range(12, 3)).is_none());
        let four = RoundedMultiset::from_values(vec![4, 4]);
        let w = feasible_cover_rounded(&four, &four).unwrap();
        assert_eq!(w.parts, vec![vec![4], vec![4]]);
        let w = feasible_cover_rounded(
            &RoundedMultiset::from_values(vec![5, 5]),
            &RoundedMultiset::from_values(vec![3, 3, 2, 2]),
        )
        .unwrap();
        assert_eq!(w.parts, vec![vec![3, 2], vec![3, 2]]);
    }

    #[test]
    fn lift_maps_blocks_by_rank() {
        let mut pool = RankPool::new(12, 3);
        let top = 12 + pool.chunk;
        let block: Vec<u32> = (0..4).map(|_| top - pool.take(12)).collect();
        assert_eq!(block, vec![16, 15, 14, 13]);
        let block: Vec<u32> = (0..4).map(|_| top - pool.take(8)).collect();
        assert_eq!(block, vec![12, 11, 10, 9]);
        let mut pool = RankPool::new(4, 4);
        let lifted: Vec<u32> = (1..=4).map(|v| 4 + pool.chunk - pool.take(v)).collect();
        assert_eq!(lifted, vec![2, 3, 4, 5]);
    }

    #[test]
    fn lifted_witness_covers_original() {
        let s = [5, 5];
        let m = 5;
        let cover = feasible_cover_rounded(&round_multiset(&s, 2), &round_range(m, 2)).unwrap();
        let w = lift_cover(&s, &cover, m, 2);
        assert_eq!(w.m, 8);
        w.validate(&s).unwrap();
    }

    #[test]
    fn ptas_examples() {
        let s = [13, 8, 7, 6];
        let r = ptas_prefix_cover(&s, PtasParams::new(4)).unwrap();
        r.witness.validate(&s).unwrap();
        assert!(r.witness.m <= 15 && r.witness.m >= 8);
        for p in 1..6 {
            let r = ptas_prefix_cover(&[1], PtasParams::new(p)).unwrap();
            assert!(r.witness.m <= 2);
        }
        assert_eq!(PtasParams::from_epsilon(1.0).p, 3);
        assert_eq!(PtasParams::from_epsilon(0.5).p, 12);
        assert!(Factor::single_cover(4).admits(15, 8));
        assert!(!Factor::single_cover(4).admits(16, 8));
    }

    #[test]
    fn worked_witness_schedule() {
        let spec = KCycleSpec::new(vec![13, 8, 7, 6]).unwrap();
        let w = CoverWitness {
            m: 8,
            parts: vec![vec![8, 5], vec![7, 2], vec![4, 3], vec![6]],
        };
        let sched = kcycle_cover_to_schedule(&spec, &w).unwrap();
        let g = build_k_cycle(&spec).graph;
        assert_eq!(validate_schedule(&g, &sched), Ok(8));
    }

    #[test]
    fn small_cycle_schedules_match_oracle() {
        for lengths in [vec![2], vec![2, 2], vec![3, 2], vec![4, 3, 2]] {
            let spec = KCycleSpec::new(lengths.clone()).unwrap();
            let w = exact_prefix_cover(&lengths).unwrap();
            let g = build_k_cycle(&spec).graph;
            let sched = kcycle_cover_to_schedule(&spec, &w).unwrap();
            let opt = exact_broadcast_time(&g, 0).unwrap().0;
            assert_eq!(validate_schedule(&g, &sched), Ok(opt));
        }
    }

    #[test]
    fn non_center_originators() {
        for lengths in [vec![2], vec![2, 2], vec![5, 3], vec![4, 4, 2]] {
            let spec = KCycleSpec::new(lengths).unwrap();
            let g = build_k_cycle(&spec).graph;
            for v in 0..g.n() {
                let p = 3;
                let sched = kcycle_broadcast_ptas(&spec, v, PtasParams::new(p)).unwrap();
                let got = validate_schedule(&g, &sched).unwrap();
                let opt = exact_broadcast_time(&g, v).unwrap().0;
                assert!(got >= opt);
                assert!(
                    Factor::single_cover(p).admits(got as u64, opt as u64),
                    "{v}: {got} vs {opt}"
                );
            }
        }
        let spec = KCycleSpec::new(vec![2]).unwrap();
        let sched = kcycle_broadcast_ptas(&spec, 1, PtasParams::new(2)).unwrap();
        assert_eq!(sched.completion(), 2);
        assert!(kcycle_broadcast_ptas(&spec, 9, PtasParams::new(2)).is_err());
    }
}
