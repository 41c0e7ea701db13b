//! Hardness reductions from restricted numerical 3-dimensional matching
//! (RN3DM) to broadcasting on k-cycle and k-path graphs, with certificate
//! translation in both directions and the counting bounds that make the
//! reduced instances tight.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    build_k_cycle, build_k_path, GraphError, KCycleGraph, KCycleSpec, KPathGraph, KPathSpec, Round,
    Vertex,
};
use crate::schedule::{push_chain, validate_schedule, BroadcastSchedule, ScheduleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("instance is empty")]
    Empty,
    #[error("element {index} is zero")]
    ZeroElement { index: usize },
    #[error("sum {sum} + m(m+1) is not divisible by m = {m}")]
    NotDivisible { sum: u64, m: usize },
    #[error("elements sum to {sum}, expected m(2m+1) = {expected}")]
    WrongSum { sum: u64, expected: u64 },
    #[error("certificate has length {got}, instance has {expected} elements")]
    SizeMismatch { expected: usize, got: usize },
    #[error("element {index} is even; the k-cycle reduction needs odd elements")]
    EvenElement { index: usize },
    #[error("element {index} is too large to be realised by the reduction")]
    TriviallyInfeasible { index: usize },
    #[error("schedule completes at round {completion}, target is {target}")]
    NotTight { completion: Round, target: Round },
    #[error("instance has m = {m}, exhaustive search is limited to {cap}")]
    InstanceTooLarge { m: usize, cap: usize },
    #[error("certificate does not solve the instance")]
    InvalidCertificate,
    #[error("schedule does not encode a certificate")]
    ExtractionFailed,
    #[error("round {round}: {count} vertices informed, bound is {cap}")]
    CountExceeded {
        round: Round,
        count: usize,
        cap: u64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// A pair of permutations, 1-based: `(λ, μ)` for RN3DM, `(α, β)` for the
/// even-odd variant.
pub type Certificate = (Vec<u32>, Vec<u32>);

/// An RN3DM instance: find permutations λ, μ of `[m]` with
/// `λ(i) + μ(i) + w_i = e` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Rn3dmFile", into = "Rn3dmFile")]
pub struct Rn3dmInstance {
    w: Vec<u32>,
    e: u32,
}

#[derive(Serialize, Deserialize)]
struct Rn3dmFile {
    w: Vec<u32>,
}

impl TryFrom<Rn3dmFile> for Rn3dmInstance {
    type Error = ReductionError;
    fn try_from(f: Rn3dmFile) -> Result<Self, Self::Error> {
        Self::new(f.w)
    }
}

impl From<Rn3dmInstance> for Rn3dmFile {
    fn from(i: Rn3dmInstance) -> Self {
        Rn3dmFile { w: i.w }
    }
}

impl Rn3dmInstance {
    pub fn new(w: Vec<u32>) -> Result<Self, ReductionError> {
        let m = w.len();
        if m == 0 {
            return Err(ReductionError::Empty);
        }
        if let Some(index) = w.iter().position(|&x| x == 0) {
            return Err(ReductionError::ZeroElement { index });
        }
        let sum: u64 = w.iter().map(|&x| x as u64).sum();
        let total = sum + (m as u64) * (m as u64 + 1);
        if !total.is_multiple_of(m as u64) {
            return Err(ReductionError::NotDivisible { sum, m });
        }
        let e = u32::try_from(total / m as u64).expect("e fits in u32 for u32 weights");
        Ok(Self { w, e })
    }

    pub fn w(&self) -> &[u32] {
        &self.w
    }

    pub fn m(&self) -> usize {
        self.w.len()
    }

    pub fn e(&self) -> u32 {
        self.e
    }
}

/// Even-odd variant: `α` permutes the even numbers of `[2m]`, `β` the odd
/// ones, and `α(i) + β(i) = c_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EvenOddFile", into = "EvenOddFile")]
pub struct EvenOddInstance {
    c: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct EvenOddFile {
    c: Vec<u32>,
}

impl TryFrom<EvenOddFile> for EvenOddInstance {
    type Error = ReductionError;
    fn try_from(f: EvenOddFile) -> Result<Self, Self::Error> {
        Self::new(f.c)
    }
}

impl From<EvenOddInstance> for EvenOddFile {
    fn from(i: EvenOddInstance) -> Self {
        EvenOddFile { c: i.c }
    }
}

impl EvenOddInstance {
    /// Even elements are accepted; such instances simply have no solution.
    pub fn new(c: Vec<u32>) -> Result<Self, ReductionError> {
        let m = c.len() as u64;
        if m == 0 {
            return Err(ReductionError::Empty);
        }
        if let Some(index) = c.iter().position(|&x| x == 0) {
            return Err(ReductionError::ZeroElement { index });
        }
        let sum: u64 = c.iter().map(|&x| x as u64).sum();
        let expected = m * (2 * m + 1);
        if sum != expected {
            return Err(ReductionError::WrongSum { sum, expected });
        }
        Ok(Self { c })
    }

    pub fn c(&self) -> &[u32] {
        &self.c
    }

    pub fn m(&self) -> usize {
        self.c.len()
    }

    pub fn has_even(&self) -> bool {
        self.c.iter().any(|&x| x % 2 == 0)
    }
}

fn is_permutation_of(values: &[u32], allowed: impl Iterator<Item = u32>) -> bool {
    let mut want: Vec<u32> = allowed.collect();
    let mut got = values.to_vec();
    want.sort_unstable();
    got.sort_unstable();
    want == got
}

fn check_len(expected: usize, got: usize) -> Result<(), ReductionError> {
    if expected == got {
        Ok(())
    } else {
        Err(ReductionError::SizeMismatch { expected, got })
    }
}

/// Permutations are 1-based: `lambda[i]` is `λ(i+1)`.
pub fn verify_rn3dm(
    inst: &Rn3dmInstance,
    lambda: &[u32],
    mu: &[u32],
) -> Result<bool, ReductionError> {
    let m = inst.m();
    check_len(m, lambda.len())?;
    check_len(m, mu.len())?;
    let range = || 1..=m as u32;
    Ok(is_permutation_of(lambda, range())
        && is_permutation_of(mu, range())
        && (0..m).all(|i| lambda[i] as u64 + mu[i] as u64 + inst.w[i] as u64 == inst.e as u64))
}

pub fn verify_evenodd(
    inst: &EvenOddInstance,
    alpha: &[u32],
    beta: &[u32],
) -> Result<bool, ReductionError> {
    let m = inst.m();
    check_len(m, alpha.len())?;
    check_len(m, beta.len())?;
    let evens = (1..=m as u32).map(|j| 2 * j);
    let odds = (1..=m as u32).map(|j| 2 * j - 1);
    Ok(is_permutation_of(alpha, evens)
        && is_permutation_of(beta, odds)
        && (0..m).all(|i| alpha[i] as u64 + beta[i] as u64 == inst.c[i] as u64))
}

/// `c_i = 2e - 2w_i - 1`.
pub fn rn3dm_to_evenodd(inst: &Rn3dmInstance) -> Result<EvenOddInstance, ReductionError> {
    let c = inst
        .w
        .iter()
        .enumerate()
        .map(|(index, &w)| {
            if w >= inst.e {
                Err(ReductionError::TriviallyInfeasible { index })
            } else {
                Ok(2 * (inst.e - w) - 1)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    EvenOddInstance::new(c)
}

/// `α(i) = 2λ(i)`, `β(i) = 2μ(i) - 1`.
pub fn rn3dm_certificate_to_evenodd(lambda: &[u32], mu: &[u32]) -> Certificate {
    (
        lambda.iter().map(|&l| 2 * l).collect(),
        mu.iter().map(|&u| 2 * u - 1).collect(),
    )
}

pub fn evenodd_certificate_to_rn3dm(alpha: &[u32], beta: &[u32]) -> Certificate {
    (
        alpha.iter().map(|&a| a / 2).collect(),
        beta.iter().map(|&b| b.div_ceil(2)).collect(),
    )
}

/// Inverse of [`rn3dm_to_evenodd`] for all-odd instances: with
/// `e = max((c_i + 1) / 2) + 1` and `w_i = e - (c_i + 1) / 2`, certificates
/// correspond through `λ = α / 2`, `μ = (β + 1) / 2`.
pub fn evenodd_to_rn3dm(inst: &EvenOddInstance) -> Result<Rn3dmInstance, ReductionError> {
    if let Some(index) = inst.c.iter().position(|&c| c % 2 == 0) {
        return Err(ReductionError::EvenElement { index });
    }
    let half: Vec<u32> = inst.c.iter().map(|&c| c.div_ceil(2)).collect();
    let e = half.iter().max().expect("non-empty") + 1;
    let inst = Rn3dmInstance::new(half.iter().map(|&h| e - h).collect())?;
    debug_assert_eq!(inst.e, e);
    Ok(inst)
}

/// Reduced k-cycle instance: broadcast from the center within `target`
/// rounds iff the even-odd instance is solvable.
#[derive(Debug, Clone)]
pub struct KCycleReduction {
    pub instance: EvenOddInstance,
    pub spec: KCycleSpec,
    pub kc: KCycleGraph,
    pub target: Round,
}

impl KCycleReduction {
    pub fn source(&self) -> Vertex {
        self.kc.center
    }
}

/// Even elements are rejected: with them a center schedule can pair values
/// of equal parity, so the target would no longer certify a solution.
pub fn evenodd_to_kcycle(inst: &EvenOddInstance) -> Result<KCycleReduction, ReductionError> {
    if let Some(index) = inst.c.iter().position(|&c| c % 2 == 0) {
        return Err(ReductionError::EvenElement { index });
    }
    if let Some(index) = inst.c.iter().position(|&c| c < 2) {
        return Err(ReductionError::TriviallyInfeasible { index });
    }
    let spec = KCycleSpec::new(inst.c.clone())?;
    let kc = build_k_cycle(&spec);
    Ok(KCycleReduction {
        instance: inst.clone(),
        spec,
        kc,
        target: 2 * inst.m() as Round,
    })
}

/// The center calls into cycle `i` at rounds `2m - α(i) + 1` and
/// `2m - β(i) + 1`; each call starts a chain of `α(i)` resp. `β(i)` vertices.
pub fn kcycle_certificate_schedule(
    red: &KCycleReduction,
    alpha: &[u32],
    beta: &[u32],
) -> Result<BroadcastSchedule, ReductionError> {
    if !verify_evenodd(&red.instance, alpha, beta)? {
        return Err(ReductionError::InvalidCertificate);
    }
    let t = red.target;
    let mut sched = BroadcastSchedule::single_source(red.kc.center);
    for (i, arc) in red.kc.arcs.iter().enumerate() {
        let (front, back) = arc.split_at(alpha[i] as usize);
        let back: Vec<Vertex> = back.iter().rev().copied().collect();
        push_chain(&mut sched, t + 1 - alpha[i], red.kc.center, front);
        push_chain(&mut sched, t + 1 - beta[i], red.kc.center, &back);
    }
    sched.normalize();
    Ok(sched)
}

/// Reads `(α, β)` off a schedule that meets the target: a center call at
/// round `r` opens a chain of `2m - r + 1` vertices.
pub fn kcycle_schedule_to_certificate(
    red: &KCycleReduction,
    sched: &BroadcastSchedule,
) -> Result<Certificate, ReductionError> {
    let completion = validate_schedule(&red.kc.graph, sched)?;
    if completion > red.target {
        return Err(ReductionError::NotTight {
            completion,
            target: red.target,
        });
    }
    let mut owner = vec![usize::MAX; red.kc.graph.n()];
    for (i, arc) in red.kc.arcs.iter().enumerate() {
        for &v in arc {
            owner[v] = i;
        }
    }
    let k = red.kc.arcs.len();
    let mut values: Vec<Vec<u32>> = vec![Vec::new(); k];
    for call in sched.calls.iter().filter(|c| c.caller == red.kc.center) {
        values[owner[call.callee]].push(red.target - call.round + 1);
    }
    let mut alpha = Vec::with_capacity(k);
    let mut beta = Vec::with_capacity(k);
    for vals in &values {
        let even = vals.iter().find(|&&v| v % 2 == 0);
        let odd = vals.iter().find(|&&v| v % 2 == 1);
        let (2, Some(&a), Some(&b)) = (vals.len(), even, odd) else {
            return Err(ReductionError::ExtractionFailed);
        };
        alpha.push(a);
        beta.push(b);
    }
    if !verify_evenodd(&red.instance, &alpha, &beta)? {
        return Err(ReductionError::ExtractionFailed);
    }
    Ok((alpha, beta))
}

/// Reduced k-path instance: lengths `e - w_i` plus the s–t edge, broadcast
/// from `s` within `m + 1` rounds iff the RN3DM instance is solvable.
#[derive(Debug, Clone)]
pub struct KPathReduction {
    pub instance: Rn3dmInstance,
    pub spec: KPathSpec,
    pub kp: KPathGraph,
    pub target: Round,
}

impl KPathReduction {
    pub fn source(&self) -> Vertex {
        self.kp.s
    }
}

pub fn rn3dm_to_kpath(inst: &Rn3dmInstance) -> Result<KPathReduction, ReductionError> {
    let lengths = inst
        .w
        .iter()
        .enumerate()
        .map(|(index, &w)| {
            if w >= inst.e {
                Err(ReductionError::TriviallyInfeasible { index })
            } else {
                Ok(inst.e - w)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let spec = KPathSpec::new(lengths, true)?;
    let kp = build_k_path(&spec);
    Ok(KPathReduction {
        instance: inst.clone(),
        spec,
        kp,
        target: inst.m() as Round + 1,
    })
}

/// `s` calls `t` in round 1; then `s` calls into path `j` at round
/// `m + 2 - λ(j)` and `t` at round `m + 2 - μ(j)`.
pub fn kpath_certificate_schedule(
    red: &KPathReduction,
    lambda: &[u32],
    mu: &[u32],
) -> Result<BroadcastSchedule, ReductionError> {
    if !verify_rn3dm(&red.instance, lambda, mu)? {
        return Err(ReductionError::InvalidCertificate);
    }
    let last = red.target + 1;
    let (s, t) = (red.kp.s, red.kp.t);
    let mut sched = BroadcastSchedule::single_source(s);
    sched.push(1, s, t);
    for (j, path) in red.kp.paths.iter().enumerate() {
        let (front, back) = path.split_at(lambda[j] as usize);
        let back: Vec<Vertex> = back.iter().rev().copied().collect();
        push_chain(&mut sched, last - lambda[j], s, front);
        push_chain(&mut sched, last - mu[j], t, &back);
    }
    sched.normalize();
    Ok(sched)
}

pub fn kpath_schedule_to_certificate(
    red: &KPathReduction,
    sched: &BroadcastSchedule,
) -> Result<Certificate, ReductionError> {
    let completion = validate_schedule(&red.kp.graph, sched)?;
    if completion > red.target {
        return Err(ReductionError::NotTight {
            completion,
            target: red.target,
        });
    }
    let mut owner = vec![usize::MAX; red.kp.graph.n()];
    for (j, path) in red.kp.paths.iter().enumerate() {
        for &v in path {
            owner[v] = j;
        }
    }
    let k = red.kp.paths.len();
    let mut lambda = vec![0; k];
    let mut mu = vec![0; k];
    for call in &sched.calls {
        let slot = if call.caller == red.kp.s {
            &mut lambda
        } else if call.caller == red.kp.t {
            &mut mu
        } else {
            continue;
        };
        if call.callee == red.kp.s || call.callee == red.kp.t {
            continue;
        }
        slot[owner[call.callee]] = red.target + 1 - call.round;
    }
    if !verify_rn3dm(&red.instance, &lambda, &mu)? {
        return Err(ReductionError::ExtractionFailed);
    }
    Ok((lambda, mu))
}

pub const RN3DM_SEARCH_CAP: usize = 7;

/// Exhaustive RN3DM search for `m <= RN3DM_SEARCH_CAP`: `λ` is enumerated in
/// lexicographic order and `μ(i) = e - w_i - λ(i)` is forced. Returns the
/// lexicographically smallest certificate.
pub fn solve_rn3dm_small(inst: &Rn3dmInstance) -> Result<Option<Certificate>, ReductionError> {
    let m = inst.m();
    if m > RN3DM_SEARCH_CAP {
        return Err(ReductionError::InstanceTooLarge {
            m,
            cap: RN3DM_SEARCH_CAP,
        });
    }
    let mut lambda = Vec::with_capacity(m);
    let mut mu = Vec::with_capacity(m);
    let mut used_l = vec![false; m + 1];
    let mut used_m = vec![false; m + 1];
    let found = search(inst, &mut lambda, &mut mu, &mut used_l, &mut used_m);
    Ok(found.then_some((lambda, mu)))
}

fn search(
    inst: &Rn3dmInstance,
    lambda: &mut Vec<u32>,
    mu: &mut Vec<u32>,
    used_l: &mut [bool],
    used_m: &mut [bool],
) -> bool {
    let i = lambda.len();
    if i == inst.m() {
        return true;
    }
    let m = inst.m() as i64;
    for l in 1..=m {
        let u = inst.e as i64 - inst.w[i] as i64 - l;
        if used_l[l as usize] || !(1..=m).contains(&u) || used_m[u as usize] {
            continue;
        }
        used_l[l as usize] = true;
        used_m[u as usize] = true;
        lambda.push(l as u32);
        mu.push(u as u32);
        if search(inst, lambda, mu, used_l, used_m) {
            return true;
        }
        lambda.pop();
        mu.pop();
        used_l[l as usize] = false;
        used_m[u as usize] = false;
    }
    false
}

/// Most vertices a k-cycle schedule from the center can have informed after
/// round `i`.
pub fn kcycle_count_cap(i: Round) -> u64 {
    1 + (i as u64) * (i as u64 + 1) / 2
}

/// Most vertices a k-path schedule from `s` can have informed after round
/// `i >= 1`.
pub fn kpath_count_cap(i: Round) -> u64 {
    if i == 0 {
        1
    } else {
        (i as u64) * (i as u64 - 1) + 2
    }
}

/// Checks the cumulative informed count of `sched` against `cap` for every
/// round up to its completion.
pub fn check_count_bound(
    sched: &BroadcastSchedule,
    n: usize,
    cap: impl Fn(Round) -> u64,
) -> Result<(), ReductionError> {
    let horizon = sched.completion();
    for (round, &count) in sched.informed_counts(n, horizon).iter().enumerate() {
        let round = round as Round;
        if count as u64 > cap(round) {
            return Err(ReductionError::CountExceeded {
                round,
                count,
                cap: cap(round),
            });
        }
    }
    Ok(())
}
