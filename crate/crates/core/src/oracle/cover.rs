use std::collections::HashSet;

use super::OracleError;
use crate::doublecover::DoubleCoverWitness;
use crate::prefixcover::{check_ground, CoverWitness};

/// Numbers are tracked in a `u128` bitmask, so `max(S) + |S|` (the trivial
/// upper bound on the optimum) must stay below 128.
const MAX_NUMBER: u32 = 127;

fn check(s: &[u32]) -> Result<(), OracleError> {
    check_ground(s)?;
    let bound = s.iter().max().copied().unwrap_or(0) as u64 + s.len() as u64;
    if bound > MAX_NUMBER as u64 {
        return Err(OracleError::CoverTooLarge {
            bound,
            limit: MAX_NUMBER,
        });
    }
    Ok(())
}

/// Indices of `s` sorted by value, largest first.
fn descending(s: &[u32]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..s.len()).collect();
    idx.sort_by(|&a, &b| s[b].cmp(&s[a]).then(a.cmp(&b)));
    idx
}

/// Sum of the `count` largest numbers present in `avail`.
fn top_sum(avail: u128, count: usize) -> u64 {
    let mut rest = avail;
    let mut sum = 0u64;
    for _ in 0..count {
        if rest == 0 {
            break;
        }
        let hi = 127 - rest.leading_zeros();
        sum += hi as u64;
        rest &= !(1u128 << hi);
    }
    sum
}

fn range_mask(bound: u32) -> u128 {
    if bound == 0 {
        0
    } else {
        (u128::MAX >> (127 - bound)) & !1
    }
}

/// Smallest `m` for which `[m]` covers `s`, with a witness.
pub fn exact_prefix_cover(s: &[u32]) -> Result<CoverWitness, OracleError> {
    check(s)?;
    let order = descending(s);
    let total: u64 = s.iter().map(|&x| x as u64).sum();
    let hi = s.iter().max().copied().unwrap_or(0) + s.len() as u32;
    let mut m = s.len() as u32;
    while (m as u64) * (m as u64 + 1) / 2 < total {
        m += 1;
    }
    for m in m..=hi {
        let mut solver = Single {
            s,
            order: &order,
            failed: HashSet::new(),
            parts: vec![Vec::new(); s.len()],
        };
        if solver.run(0, range_mask(m)) {
            return Ok(CoverWitness {
                m,
                parts: solver.parts,
            });
        }
    }
    unreachable!("[max(S) + |S|] always covers S")
}

struct Single<'a> {
    s: &'a [u32],
    order: &'a [usize],
    failed: HashSet<(usize, u128)>,
    parts: Vec<Vec<u32>>,
}

impl Single<'_> {
    fn run(&mut self, pos: usize, avail: u128) -> bool {
        let Some(&elem) = self.order.get(pos) else {
            return true;
        };
        if self.failed.contains(&(pos, avail)) {
            return false;
        }
        let rest = &self.order[pos..];
        let demand: u64 = rest.iter().map(|&i| self.s[i] as u64).sum();
        if top_sum(avail, 2 * rest.len()) < demand || (avail.count_ones() as usize) < rest.len() {
            self.failed.insert((pos, avail));
            return false;
        }
        let need = self.s[elem];
        for a in (1..=127u32).rev().filter(|&a| avail >> a & 1 == 1) {
            let without_a = avail & !(1u128 << a);
            if a >= need {
                self.parts[elem] = vec![a];
                if self.run(pos + 1, without_a) {
                    return true;
                }
                continue;
            }
            if need - a >= a {
                break;
            }
            for b in (need - a..a).rev().filter(|&b| without_a >> b & 1 == 1) {
                self.parts[elem] = vec![a, b];
                if self.run(pos + 1, without_a & !(1u128 << b)) {
                    return true;
                }
            }
        }
        self.failed.insert((pos, avail));
        false
    }
}

/// Smallest `m` admitting a double covering of `s` with `d` drawn from
/// `[m - beta]`, with a witness.
pub fn exact_double_prefix_cover(s: &[u32], beta: u32) -> Result<DoubleCoverWitness, OracleError> {
    check(s)?;
    let order = descending(s);
    let hi = s.iter().max().copied().unwrap_or(0) + s.len() as u32;
    let mut m: u32 = 1;
    while m + m.saturating_sub(beta) < s.len() as u32 {
        m += 1;
    }
    for m in m..=hi {
        let mut solver = Double {
            s,
            order: &order,
            failed: HashSet::new(),
            c: vec![0; s.len()],
            d: vec![0; s.len()],
        };
        if solver.run(0, range_mask(m), range_mask(m.saturating_sub(beta))) {
            return Ok(DoubleCoverWitness {
                m,
                beta,
                c: solver.c,
                d: solver.d,
            });
        }
    }
    unreachable!("c alone over [max(S) + |S|] covers S")
}

struct Double<'a> {
    s: &'a [u32],
    order: &'a [usize],
    failed: HashSet<(usize, u128, u128)>,
    c: Vec<u32>,
    d: Vec<u32>,
}

impl Double<'_> {
    fn run(&mut self, pos: usize, avail_c: u128, avail_d: u128) -> bool {
        let Some(&elem) = self.order.get(pos) else {
            return true;
        };
        if self.failed.contains(&(pos, avail_c, avail_d)) {
            return false;
        }
        let rest = &self.order[pos..];
        let demand: u64 = rest.iter().map(|&i| self.s[i] as u64).sum();
        if top_sum(avail_c, rest.len()) + top_sum(avail_d, rest.len()) < demand {
            self.failed.insert((pos, avail_c, avail_d));
            return false;
        }
        let need = self.s[elem];
        let cs = (1..=127u32)
            .rev()
            .filter(|&c| avail_c >> c & 1 == 1)
            .chain(std::iter::once(0));
        for c in cs {
            let next_c = if c > 0 {
                avail_c & !(1u128 << c)
            } else {
                avail_c
            };
            if c >= need {
                self.c[elem] = c;
                self.d[elem] = 0;
                if self.run(pos + 1, next_c, avail_d) {
                    return true;
                }
                continue;
            }
            for d in (need - c..=127u32).rev().filter(|&d| avail_d >> d & 1 == 1) {
                self.c[elem] = c;
                self.d[elem] = d;
                if self.run(pos + 1, next_c, avail_d & !(1u128 << d)) {
                    return true;
                }
            }
        }
        self.failed.insert((pos, avail_c, avail_d));
        false
    }
}
